#include "pstark/bundles.hpp"

#include <fstream>

#include "json.hpp"

namespace pstark {

using nlohmann::json;

static Rat rat_from_string(const std::string& s) {
    if (s.find('.') != std::string::npos) return parse_decimal(s);
    Rat r(s);
    r.canonicalize();
    return r;
}

static QuadIdeal ideal_from_json(const QuadField& k, const json& j) {
    // {"hnf": [[a, b], [0, c]], "scale": "p/q"}
    auto m = j.at("hnf");
    Int a(m[0][0].get<std::string>(), 10), bb(m[0][1].get<std::string>(), 10);
    Int z(m[1][0].get<std::string>(), 10), c(m[1][1].get<std::string>(), 10);
    require(z == 0, errc::internal, "ideal literal must be upper triangular");
    Rat scale = rat_from_string(j.value("scale", std::string("1")));
    // canonicalize through the generator constructor
    QuadElem g1{Rat(a) * scale, Rat(0)}, g2{Rat(bb) * scale, Rat(c) * scale};
    return k.ideal_from_generators({g1, g2});
}

QuadIdeal ideal_from_json_literal(const QuadField& k, const std::string& json_text) {
    return ideal_from_json(k, json::parse(json_text));
}

ExampleBundle load_bundle(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::internal, "cannot open bundle " + path);
    json j;
    in >> j;
    ExampleBundle b;
    b.id = j.at("id").get<int>();
    b.d = Int(j.at("d").get<long>());
    for (auto& f : j.at("f")) {
        Int p(f.at("p").get<long>());
        Int idx(f.value("index", -1));
        Int e(f.value("e", 1));
        b.f_factors.push_back({p, idx, e});
    }
    b.f_label = j.value("f_label", std::string());
    b.h_k = j.at("h_k").get<long>();
    for (auto& o : j.at("G")) b.group_orders.push_back(o.get<long>());
    b.gamma_symmetric = j.value("gamma_symmetric", false);
    for (auto& pj : j.value("primes", json::array())) {
        BundlePrime bp;
        bp.p = Int(pj.at("p").get<long>());
        bp.digits = pj.at("digits").get<long>();
        for (auto& cj : pj.at("coeffs")) {
            ExpectedCoeff ec;
            ec.digits = cj.at("digits").get<std::string>();
            for (auto& el : cj.at("elements")) {
                std::vector<long> e;
                for (auto& v : el) e.push_back(v.get<long>());
                ec.elements.push_back(e);
            }
            bp.coeffs.push_back(ec);
        }
        b.primes.push_back(bp);
    }
    if (j.contains("ray_class")) {
        b.has_injection = true;
        for (auto& o : j["ray_class"].at("orders")) b.inj_orders.push_back(o.get<long>());
        for (auto& g : j["ray_class"].at("generators")) b.inj_generators.push_back(g.dump());
    }
    if (j.contains("verification")) {
        auto& v = j["verification"];
        b.has_verification = true;
        for (auto& r : v.at("ranks")) b.ranks.push_back(r.get<long>());
        for (auto& e : v.value("e_tilde_gt2", json::array()))
            b.e_tilde_gt2.push_back(Int(e.get<long>()));
        for (auto& s : v.at("rgamma")) b.rgamma.push_back(s.get<std::string>());
        for (auto& s : v.at("phi0")) b.phi0.push_back(s.get<std::string>());
        for (auto& s : v.value("rgamma_hi", json::array()))
            b.rgamma_hi.push_back(s.get<std::string>());
        for (auto& s : v.value("phi0_hi", json::array()))
            b.phi0_hi.push_back(s.get<std::string>());
        b.b = Int(v.value("b", 1L));
        b.prime_power_f = v.at("prime_power_f").get<bool>();
        for (auto& s : v.at("expected_A")) b.expected_A.push_back(s.get<std::string>());
        b.expected_df = Int(v.value("expected_df", 0L));
        for (auto& s : v.value("expected_df_sigma", json::array()))
            b.expected_df_sigma.push_back(Int(s.get<long>()));
        b.expected_index = v.value("expected_index", std::string());
        b.df_assumed = v.value("df_assumed", false);
        b.table_data_suspect = v.value("table_data_suspect", false);
        b.printed_A_suspect = v.value("printed_A_suspect", false);
        if (v.contains("units")) {
            b.has_units = true;
            auto& u = v["units"];
            auto& sig = u.at("sigma");
            size_t n = sig.size();
            b.sigma_action = ZMat(n, n);
            for (size_t i = 0; i < n; ++i)
                for (size_t jj = 0; jj < n; ++jj) b.sigma_action(i, jj) = Int(sig[i][jj].get<long>());
            for (auto& cls : u.at("v")) {
                std::vector<std::vector<Rat>> vv;
                for (auto& vec : cls) {
                    std::vector<Rat> r;
                    for (auto& x : vec) r.push_back(Rat(x.get<long>()));
                    vv.push_back(r);
                }
                b.v_vectors.push_back(vv);
            }
            for (auto& t : u.at("gamma")) {
                std::vector<Rat> a, bb2;
                for (auto& x : t[0]) a.push_back(Rat(x.get<long>()));
                for (auto& x : t[1]) bb2.push_back(Rat(x.get<long>()));
                b.gamma_terms.push_back({a, bb2});
            }
        }
    }
    return b;
}

std::string bundle_path(int id, const std::string& data_dir) {
    std::string dir = data_dir;
    if (dir.empty()) {
        const char* env = std::getenv("PSTARK_DATA");
        if (env) dir = env;
    }
    if (dir.empty()) dir = "data/examples";
    char buf[32];
    snprintf(buf, sizeof(buf), "/ex%02d.json", id);
    return dir + buf;
}

QuadIdeal bundle_modulus(const QuadField& k, const ExampleBundle& b) {
    QuadIdeal f = k.ideal_O();
    for (auto& fac : b.f_factors) {
        const Int &p = fac[0], &idx = fac[1], &e = fac[2];
        QuadIdeal piece;
        if (idx < 0) {
            piece = k.principal_ideal(QuadElem::integer(Rat(p)));
        } else {
            auto qs = k.primes_above(p);
            require((size_t)idx.get_si() < qs.size(), errc::internal, "prime index out of range");
            piece = qs[idx.get_si()];
        }
        f = k.mul(f, k.pow(piece, e.get_si()));
    }
    return f;
}

// all automorphisms of the abelian group with the given invariant factors,
// as permutations of element indices
static std::vector<std::vector<unsigned long>> group_automorphisms(const std::vector<long>& orders) {
    unsigned long g = 1;
    for (long o : orders) g *= (unsigned long)o;
    size_t r = orders.size();
    std::vector<std::vector<unsigned long>> autos;
    if (r == 0) return {{0}};
    // candidate images for each generator: all elements; keep the maps that
    // are homomorphisms of the right order and bijective
    std::vector<unsigned long> img(r, 0);
    std::vector<unsigned long> counters(r, 0);
    for (;;) {
        // build the map x -> sum x_i * img_i and test bijectivity
        std::vector<unsigned long> perm(g);
        std::vector<bool> hit(g, false);
        bool ok = true;
        for (unsigned long x = 0; x < g && ok; ++x) {
            auto xe = unrank_mixed(x, orders);
            std::vector<long> acc(r, 0);
            for (size_t i = 0; i < r; ++i) {
                auto ie = unrank_mixed(counters[i], orders);
                for (size_t t = 0; t < r; ++t) acc[t] = (acc[t] + xe[i] * ie[t]) % orders[t];
            }
            unsigned long y = rank_mixed(acc, orders);
            perm[x] = y;
            if (hit[y]) ok = false;
            hit[y] = true;
        }
        if (ok) autos.push_back(perm);
        // next candidate tuple
        size_t i = 0;
        while (i < r) {
            if (++counters[i] < g) break;
            counters[i] = 0;
            ++i;
        }
        if (i == r) break;
    }
    return autos;
}

bool phi_matches_expected(const PhiResult& phi, const BundlePrime& expect,
                          std::string* matched_auto) {
    require(phi.p == expect.p && phi.N == expect.digits, errc::internal,
            "prime/precision mismatch in assertion");
    unsigned long g = phi.coef.size();
    std::vector<std::string> got = phi_digit_strings(phi);
    std::vector<std::string> want(g);
    std::vector<bool> set(g, false);
    for (auto& ec : expect.coeffs)
        for (auto& el : ec.elements) {
            unsigned long idx = rank_mixed(el, phi.orders);
            require(!set[idx], errc::internal, "duplicate expected element");
            set[idx] = true;
            want[idx] = ec.digits;
        }
    for (bool s : set) require(s, errc::internal, "expected coefficients incomplete");
    for (auto& perm : group_automorphisms(phi.orders)) {
        bool ok = true;
        for (unsigned long x = 0; x < g && ok; ++x)
            if (got[perm[x]] != want[x]) ok = false;
        if (ok) {
            if (matched_auto) {
                std::string s = "generator image:";
                for (size_t i = 0; i < phi.orders.size(); ++i) {
                    std::vector<long> gen(phi.orders.size(), 0);
                    gen[i] = 1;
                    s += " " + std::to_string(perm[rank_mixed(gen, phi.orders)]);
                }
                *matched_auto = s;
            }
            return true;
        }
    }
    return false;
}

VerifyInput verify_input_from_bundle(const ExampleBundle& b, bool high_precision) {
    require(b.has_verification, errc::internal, "bundle has no verification data");
    VerifyInput in;
    in.orders = b.group_orders;
    in.ranks = b.ranks;
    in.b = b.b;
    in.prime_power_f = b.prime_power_f;
    auto mk = [&](const std::vector<std::string>& v) {
        GroupRingQ g;
        g.orders = b.group_orders;
        for (auto& s : v) g.coef.push_back(parse_decimal(s));
        return g;
    };
    if (high_precision) {
        require(!b.rgamma_hi.empty(), errc::internal, "no high-precision data in bundle");
        in.rgamma = mk(b.rgamma_hi);
        in.phi0 = mk(b.phi0_hi);
    } else {
        in.rgamma = mk(b.rgamma);
        in.phi0 = mk(b.phi0);
    }
    in.has_units = b.has_units;
    if (b.has_units) {
        in.sigma_action = b.sigma_action;
        in.v_vectors = b.v_vectors;
        in.gamma_terms = b.gamma_terms;
    }
    if (b.df_assumed) {
        in.has_assumed_df = true;
        in.assumed_df = b.expected_df;
    }
    return in;
}

} // namespace pstark
