#include "pstark/phi.hpp"

#include <atomic>
#include <sstream>
#include <thread>

namespace pstark {

PhiResult compute_phi(const QuadField& k, const QuadIdeal& f, const Int& p, long N,
                      const PhiOptions& opt) {
    require(f.is_integral() && !(f == k.ideal_O()), errc::hypothesis_violation,
            "f must be a nontrivial integral ideal");
    require(p > 2 && is_prime(p), errc::hypothesis_violation, "p must be an odd prime");
    Rat nf = k.norm(f);
    require(fmod(Int(nf.get_num()), p) != 0, errc::hypothesis_violation, "(p, f) must be 1");
    require(kronecker(k.disc(), p) == 1, errc::hypothesis_violation, "p must split in k");
    long f_int = modulus_integer(k, f);
    require((p - 1) % f_int == 0, errc::hypothesis_violation, "f must divide p - 1");

    PrecisionPlan plan = precision_plan(p, N);
    PadicEmbedding emb =
        k.make_padic_embedding(p, f_int, opt.root_choice, opt.zeta_choice, plan.Wp);
    RayClassGroup Gf = RayClassGroup::build(k, f, false, p);
    RayClassGroup Gfp = RayClassGroup::build(k, f, true, p);
    LiftData lift = lift_and_kernel(Gfp, Gf);
    CharPair base = base_pair(k, f);
    QuadElem eps = k.ray_unit(f);
    CnTable cn = c_sequence(p, plan.M);
    Int modN = pow_int(p, plan.N);

    // one fan per class, then independent per-cone jobs
    struct Job {
        const CharPair* pair;
        const ConeFan* fan;
        long cone;
        size_t cls;
    };
    std::vector<CharPair> pairs;
    std::vector<ConeFan> fans;
    pairs.reserve(Gf.size());
    fans.reserve(Gf.size());
    for (unsigned long idx = 0; idx < Gf.size(); ++idx) {
        QuadIdeal a = Gfp.representative(lift.lift[idx], p);
        pairs.push_back(act(k, base, a));
        fans.push_back(continued_fraction_fan(k, pairs.back(), eps));
    }
    std::vector<Job> jobs;
    for (size_t c = 0; c < pairs.size(); ++c)
        for (long t = 1; t <= fans[c].L(); ++t) jobs.push_back({&pairs[c], &fans[c], t, c});

    std::vector<Int> zvals(jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job& j = jobs[i];
            zvals[i] = padic_z_at_1(k, *j.pair, j.fan->rho[j.cone - 1], j.fan->rho[j.cone],
                                    j.fan->points[j.cone - 1], plan, emb, j.fan->first, cn);
        }
    };
    int nthreads = std::max(1, opt.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    PhiResult out;
    out.orders = Gf.orders();
    out.p = p;
    out.N = plan.N;
    out.modulus = modN;
    out.f_int = f_int;
    out.root_choice = opt.root_choice;
    out.zeta_choice = opt.zeta_choice;
    out.coef.assign(Gf.size(), Int(0));
    for (unsigned long idx = 0; idx < Gf.size(); ++idx) {
        Int sum(0);
        for (size_t i = 0; i < jobs.size(); ++i)
            if (jobs[i].cls == idx) sum += zvals[i];
        Rat NI = k.norm(pairs[idx].I);
        Int ni = fmod(Int(fmod(Int(NI.get_num()), modN) * inv_mod(Int(NI.get_den()), modN)), modN);
        Int val = fmod(Int(Int(lift.kernel_size) * ni % modN * fmod(sum, modN)), modN);
        // place at sigma_c^{-1}
        ClassLabel c = Gf.label_at(idx);
        out.coef[Gf.index_of(Gf.neg(c))] = val;
    }
    return out;
}

std::string format_digits(const Int& x, const Int& p, long N) {
    require(x >= 0, errc::negative_valuation, "digit formatting needs an integral residue");
    std::ostringstream os;
    os << "0.";
    Int v = x;
    for (long i = 0; i < N; ++i) {
        long d = fmod(v, p).get_si();
        v = fdiv(v, p);
        if (d < 10)
            os << char('0' + d);
        else if (d < 36)
            os << char('A' + (d - 10));
        else
            os << '(' << d << ')';
    }
    os << "_" << p.get_str();
    return os.str();
}

std::vector<std::string> phi_digit_strings(const PhiResult& phi) {
    std::vector<std::string> out;
    out.reserve(phi.coef.size());
    for (auto& c : phi.coef) out.push_back(format_digits(c, phi.p, phi.N));
    return out;
}

bool galois_symmetric(const PhiResult& phi) {
    unsigned long n = phi.coef.size();
    for (unsigned long idx = 0; idx < n; ++idx) {
        auto e = unrank_mixed(idx, phi.orders);
        for (size_t i = 0; i < e.size(); ++i) e[i] = (phi.orders[i] - e[i]) % phi.orders[i];
        if (phi.coef[idx] != phi.coef[rank_mixed(e, phi.orders)]) return false;
    }
    return true;
}

static std::string element_name(const std::vector<long>& e, size_t ngens) {
    if (ngens == 0) return "1";
    std::ostringstream os;
    bool some = false;
    for (size_t i = 0; i < ngens; ++i) {
        if (e[i] == 0) continue;
        if (some) os << "*";
        os << "s";
        if (ngens > 1) os << (i + 1);
        if (e[i] > 1) os << "^" << e[i];
        some = true;
    }
    return some ? os.str() : "1";
}

std::string phi_to_string(const PhiResult& phi) {
    auto digits = phi_digit_strings(phi);
    std::vector<bool> used(digits.size(), false);
    std::ostringstream os;
    bool first_term = true;
    for (size_t i = 0; i < digits.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::string> names;
        for (size_t j = i; j < digits.size(); ++j)
            if (!used[j] && digits[j] == digits[i]) {
                used[j] = true;
                names.push_back(element_name(unrank_mixed(j, phi.orders), phi.orders.size()));
            }
        if (!first_term) os << " + ";
        first_term = false;
        os << digits[i];
        if (names.size() == 1 && names[0] == "1") {
            // constant term, no group factor
        } else if (names.size() == 1) {
            os << "*" << names[0];
        } else {
            os << "*(";
            for (size_t t = 0; t < names.size(); ++t) os << (t ? " + " : "") << names[t];
            os << ")";
        }
    }
    return os.str();
}

} // namespace pstark
