#include "pstark/numutil.hpp"

#include <algorithm>
#include <sstream>

namespace pstark {

const char* errc_name(errc c) {
    switch (c) {
        case errc::non_split_prime: return "NonSplitPrime";
        case errc::bad_f: return "BadF";
        case errc::zero_ideal: return "ZeroIdeal";
        case errc::not_coprime: return "NotCoprime";
        case errc::not_in_ideal: return "NotInIdeal";
        case errc::trivial_modulus: return "TrivialModulus";
        case errc::kernel_obstruction: return "KernelObstruction";
        case errc::kernel_generator: return "KernelGenerator";
        case errc::dependent_generators: return "DependentGenerators";
        case errc::non_unit_divisor: return "NonUnitDivisor";
        case errc::precision_exhausted: return "PrecisionExhausted";
        case errc::insufficient_degree: return "InsufficientDegree";
        case errc::inconsistent_groups: return "InconsistentGroups";
        case errc::hypothesis_violation: return "HypothesisViolation";
        case errc::singular_regulator: return "SingularRegulator";
        case errc::reconstruction_failed: return "ReconstructionFailed";
        case errc::rank_mismatch: return "RankMismatch";
        case errc::inconsistent_dimensions: return "InconsistentDimensions";
        case errc::negative_valuation: return "NegativeValuation";
        case errc::internal: return "InternalError";
    }
    return "UnknownError";
}

Int isqrt(const Int& n) {
    require(n >= 0, errc::internal, "isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int rfloor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int rceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int pow_mod(const Int& base, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        fail(errc::non_unit_divisor, "element not invertible modulo " + m.get_str());
    return r;
}

int kronecker(const Int& a, const Int& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

bool is_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0; }

std::vector<long> primes_below(long bound) {
    std::vector<bool> comp(std::max<long>(bound, 2), false);
    std::vector<long> out;
    for (long i = 2; i < bound; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (long j = 2 * i; j < bound; j += i) comp[j] = true;
    }
    return out;
}

long valuation(Int n, const Int& p) {
    require(n != 0, errc::internal, "valuation of zero");
    long v = 0;
    Int q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (r != 0) return v;
        ++v;
        n = q;
    }
}

long valuation(const Rat& q, const Int& p) {
    return valuation(Int(q.get_num()), p) - valuation(Int(q.get_den()), p);
}

Int sqrt_mod_prime(const Int& a0, const Int& p) {
    Int a = fmod(a0, p);
    if (a == 0) return 0;
    require(kronecker(a, p) == 1, errc::internal, "sqrt_mod_prime: non-residue");
    if (p == 2) return a;
    Int r;
    if (fmod(p, 4) == 3) {
        r = pow_mod(a, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks
        Int q = p - 1;
        unsigned long s = 0;
        while (fmod(q, 2) == 0) { q /= 2; ++s; }
        Int z = 2;
        while (kronecker(z, p) != -1) ++z;
        Int m(s), c = pow_mod(z, q, p), t = pow_mod(a, q, p), x = pow_mod(a, (q + 1) / 2, p);
        while (t != 1) {
            Int tt = t;
            long i = 0;
            while (tt != 1) { tt = tt * tt % p; ++i; }
            Int b = c;
            for (long j = 0; j < m.get_si() - i - 1; ++j) b = b * b % p;
            x = x * b % p;
            c = b * b % p;
            t = t * c % p;
            m = i;
        }
        r = x;
    }
    Int other = p - r;
    return std::min(r, other);
}

std::vector<std::pair<Int, unsigned>> factor(Int n) {
    require(n != 0, errc::internal, "factor(0)");
    if (n < 0) n = -n;
    std::vector<std::pair<Int, unsigned>> out;
    for (Int d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
        if (fmod(n, d) != 0) continue;
        unsigned e = 0;
        while (fmod(n, d) == 0) { n /= d; ++e; }
        out.push_back({d, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

Int binomial(const Int& n, unsigned long k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

unsigned long euler_phi(unsigned long n) {
    unsigned long r = n;
    for (auto& [p, e] : factor(Int(n))) r = r / p.get_ui() * (p.get_ui() - 1);
    return r;
}

Rat parse_decimal(const std::string& s) {
    require(!s.empty(), errc::internal, "empty decimal");
    std::string t = s;
    bool neg = false;
    size_t i = 0;
    if (t[0] == '+' || t[0] == '-') { neg = t[0] == '-'; i = 1; }
    std::string ip, fp;
    bool dot = false;
    for (; i < t.size(); ++i) {
        if (t[i] == '.') {
            require(!dot, errc::internal, "bad decimal " + s);
            dot = true;
        } else {
            require(t[i] >= '0' && t[i] <= '9', errc::internal, "bad decimal " + s);
            (dot ? fp : ip) += t[i];
        }
    }
    if (ip.empty()) ip = "0";
    Int num(ip + fp, 10); // explicit base: the default auto-detects octal on leading zeros
    Rat v(num, pow_int(10, fp.size()));
    v.canonicalize();
    return neg ? Rat(-v) : v;
}

std::string format_decimal(const Rat& v, int digits) {
    Rat a = v < 0 ? Rat(-v) : v;
    Int scale = pow_int(10, digits);
    // round half away from zero
    Int n = rfloor(Rat(a * scale) + Rat(1, 2));
    std::string ds = n.get_str();
    if ((int)ds.size() <= digits) ds.insert(0, digits + 1 - ds.size(), '0');
    std::string out = ds.substr(0, ds.size() - digits) + "." + ds.substr(ds.size() - digits);
    if (v < 0 && n != 0) out.insert(0, "-");
    return out;
}

std::vector<long> unrank_mixed(unsigned long idx, const std::vector<long>& orders) {
    std::vector<long> e(orders.size(), 0);
    for (size_t i = orders.size(); i-- > 0;) {
        e[i] = long(idx % (unsigned long)orders[i]);
        idx /= (unsigned long)orders[i];
    }
    return e;
}

unsigned long rank_mixed(const std::vector<long>& exps, const std::vector<long>& orders) {
    unsigned long idx = 0;
    for (size_t i = 0; i < orders.size(); ++i) {
        long e = ((exps[i] % orders[i]) + orders[i]) % orders[i];
        idx = idx * (unsigned long)orders[i] + (unsigned long)e;
    }
    return idx;
}

} // namespace pstark
