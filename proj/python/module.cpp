#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pstark/bundles.hpp"
#include "pstark/selftest.hpp"

namespace py = pybind11;
using namespace pstark;

namespace {

QuadIdeal modulus_from_args(const QuadField& k, long f_rational, const std::string& f_hnf) {
    if (!f_hnf.empty()) return ideal_from_json_literal(k, f_hnf);
    if (f_rational > 0) return k.principal_ideal(QuadElem::integer(Rat(f_rational)));
    throw error(errc::internal, "pass f_rational or f_hnf");
}

py::dict phi_to_dict(const PhiResult& phi) {
    py::dict d;
    d["orders"] = phi.orders;
    d["p"] = py::int_(py::str(phi.p.get_str()));
    d["N"] = phi.N;
    py::list coefs, digits;
    for (auto& c : phi.coef) coefs.append(py::int_(py::str(c.get_str())));
    for (auto& s : phi_digit_strings(phi)) digits.append(s);
    d["coefficients"] = coefs;
    d["digits"] = digits;
    d["formatted"] = phi_to_string(phi);
    d["symmetric"] = galois_symmetric(phi);
    return d;
}

} // namespace

PYBIND11_MODULE(_pstark, m) {
    m.doc() = "p-adic twisted zeta values and group-ring assembly over real quadratic fields";

    m.def(
        "cn",
        [](long p, long n) {
            CnTable t = c_sequence(Int(p), n);
            py::list out;
            for (long i = 1; i <= n; ++i) out.append(py::int_(py::str(t.at(i).get_str())));
            return out;
        },
        py::arg("p"), py::arg("n"), "the integers c_1..c_n for the prime p");

    m.def(
        "plan",
        [](long p, long digits) {
            PrecisionPlan plan = precision_plan(Int(p), digits);
            py::dict d;
            d["N"] = plan.N;
            d["M"] = plan.M;
            d["W"] = plan.W;
            d["Wp"] = plan.Wp;
            return d;
        },
        py::arg("p"), py::arg("digits"), "series degree and working precision for a target");

    m.def(
        "format_digits",
        [](const std::string& x, long p, long N) {
            return format_digits(Int(x, 10), Int(p), N);
        },
        py::arg("x"), py::arg("p"), py::arg("digits"));

    m.def(
        "fundamental_unit",
        [](long d) {
            QuadField k((Int(d)));
            auto e = k.fundamental_unit();
            return py::make_tuple(e.a.get_str(), e.b.get_str(),
                                  (long)k.fundamental_unit_norm());
        },
        py::arg("d"), "coordinates (a, b) of the fundamental unit a + b*omega and its norm");

    m.def(
        "trace_norm",
        [](long d, const std::string& a, const std::string& b) {
            QuadField k((Int(d)));
            Rat ra(a), rb(b);
            ra.canonicalize();
            rb.canonicalize();
            QuadElem x{ra, rb};
            return py::make_tuple(k.trace(x).get_str(), k.norm(x).get_str());
        },
        py::arg("d"), py::arg("a"), py::arg("b"));

    m.def(
        "fan",
        [](long d, long f_rational, const std::string& f_hnf) {
            QuadField k((Int(d)));
            QuadIdeal f = modulus_from_args(k, f_rational, f_hnf);
            CharPair pair = base_pair(k, f);
            ConeFan fan = continued_fraction_fan(k, pair, k.ray_unit(f));
            py::dict out;
            out["L"] = fan.L();
            out["partial_quotients"] = fan.partial_quotients;
            py::list counts;
            for (auto& pts : fan.points) counts.append(pts.size());
            out["point_counts"] = counts;
            out["first_embedding"] = fan.first;
            return out;
        },
        py::arg("d"), py::arg("f_rational") = 0, py::arg("f_hnf") = std::string());

    m.def(
        "zeta_padic_at_1",
        [](long d, long f_rational, const std::string& f_hnf, long p, long digits,
           int root_choice, int zeta_choice) {
            QuadField k((Int(d)));
            QuadIdeal f = modulus_from_args(k, f_rational, f_hnf);
            CharPair pair = base_pair(k, f);
            ConeFan fan = continued_fraction_fan(k, pair, k.ray_unit(f));
            PrecisionPlan plan = precision_plan(Int(p), digits);
            auto emb = k.make_padic_embedding(Int(p), pair.f_int, root_choice, zeta_choice,
                                              plan.Wp);
            Int z = padic_Z_at_1(k, pair, fan, plan, emb);
            return format_digits(z, Int(p), plan.N);
        },
        py::arg("d"), py::arg("f_rational"), py::arg("f_hnf") = std::string(), py::arg("p") = 3,
        py::arg("digits") = 10, py::arg("root_choice") = 0, py::arg("zeta_choice") = 0,
        "Z_{T_p,p}(1; w0) for the base pair, as a digit string");

    m.def(
        "compute_phi",
        [](long d, long f_rational, const std::string& f_hnf, long p, long digits,
           int root_choice, int zeta_choice, int threads) {
            QuadField k((Int(d)));
            QuadIdeal f = modulus_from_args(k, f_rational, f_hnf);
            PhiOptions opt{root_choice, zeta_choice, threads};
            return phi_to_dict(compute_phi(k, f, Int(p), digits, opt));
        },
        py::arg("d"), py::arg("f_rational"), py::arg("f_hnf") = std::string(), py::arg("p") = 3,
        py::arg("digits") = 10, py::arg("root_choice") = 0, py::arg("zeta_choice") = 0,
        py::arg("threads") = 1, "the group-ring element Phi_{f,T_p,p}(1)");

    m.def(
        "verify_example",
        [](const std::string& bundle_file, bool high_precision) {
            ExampleBundle b = load_bundle(bundle_file);
            py::dict out;
            out["example"] = b.id;
            if (b.table_data_suspect) {
                out["table_data_suspect"] = true;
                return out;
            }
            VerifyInput in = verify_input_from_bundle(b, high_precision);
            VerifyReport rep = check_conjecture_parts(in);
            py::list A;
            for (auto& c : rep.A.coef) A.append(c.get_str());
            out["A"] = A;
            out["d_f"] = rep.d_f.get_str();
            out["d_f_computed"] = rep.d_f_computed;
            if (rep.index_computed) out["index_ZG_eta"] = rep.index_eta.get_str();
            out["residual_is_tiny"] = rep.residual < Rat(1, pow_int(10, 20));
            return out;
        },
        py::arg("bundle_file"), py::arg("high_precision") = false);

    m.def("selftest", [] {
        std::ostringstream os;
        bool ok = selftest(os);
        return py::make_tuple(ok, os.str());
    });
}
