#include "pstark/cyclotomic.hpp"

#include <numeric>

namespace pstark {

// exact division of integer polynomials (ascending coefficients)
static std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
    require(!den.empty() && den.back() != 0, errc::internal, "poly division by zero");
    std::vector<Int> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    for (size_t i = q.size(); i-- > 0;) {
        Int t = num[i + den.size() - 1];
        require(fmod(t, den.back()) == 0, errc::internal, "non-exact poly division");
        q[i] = t / den.back();
        for (size_t j = 0; j < den.size(); ++j) num[i + j] -= q[i] * den[j];
    }
    for (auto& x : num) require(x == 0, errc::internal, "non-exact poly division");
    return q;
}

std::vector<Int> cyclotomic_poly(long n) {
    require(n >= 1, errc::internal, "cyclotomic_poly: n >= 1");
    // x^n - 1 divided by all lower-order cyclotomic polynomials
    std::vector<Int> num(n + 1, Int(0));
    num[0] = -1;
    num[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = poly_div_exact(num, cyclotomic_poly(d));
    }
    return num;
}

CycField::CycField(long n) : n_(n) {
    phi_ = cyclotomic_poly(n);
    deg_ = (long)phi_.size() - 1;
    // x^k mod phi for k < 2*deg (enough for schoolbook products)
    pows_.resize(2 * deg_);
    for (long k = 0; k < 2 * deg_; ++k) {
        std::vector<Rat> v(deg_, Rat(0));
        if (k < deg_) {
            v[k] = 1;
        } else {
            // x^k = x * x^(k-1) reduced
            const auto& prev = pows_[k - 1];
            std::vector<Rat> t(deg_ + 1, Rat(0));
            for (long i = 0; i < deg_; ++i) t[i + 1] = prev[i];
            Rat lead = t[deg_];
            for (long i = 0; i < deg_; ++i) v[i] = t[i] - lead * Rat(phi_[i]);
        }
        pows_[k] = v;
    }
}

CycElem CycField::from_rat(const Rat& r) const {
    CycElem e = zero();
    e.c[0] = r;
    return e;
}

CycElem CycField::zeta_pow(long k) const {
    k = ((k % n_) + n_) % n_;
    if (k < deg_) {
        CycElem e = zero();
        e.c[k] = 1;
        return e;
    }
    // reduce x^k by repeated use of the precomputed table
    CycElem e = zero();
    e.c[0] = 1;
    while (k > 0) {
        long step = std::min<long>(k, deg_);
        // multiply e by x^step
        std::vector<Rat> t(deg_, Rat(0));
        for (long i = 0; i < deg_; ++i) {
            if (e.c[i] == 0) continue;
            const auto& pw = pows_[i + step];
            for (long j = 0; j < deg_; ++j) t[j] += e.c[i] * pw[j];
        }
        e.c = t;
        k -= step;
    }
    return e;
}

CycElem CycField::add(const CycElem& x, const CycElem& y) const {
    CycElem r = x;
    for (long i = 0; i < deg_; ++i) r.c[i] += y.c[i];
    return r;
}

CycElem CycField::sub(const CycElem& x, const CycElem& y) const {
    CycElem r = x;
    for (long i = 0; i < deg_; ++i) r.c[i] -= y.c[i];
    return r;
}

CycElem CycField::neg(const CycElem& x) const {
    CycElem r = x;
    for (auto& v : r.c) v = -v;
    return r;
}

CycElem CycField::mul(const CycElem& x, const CycElem& y) const {
    CycElem r = zero();
    for (long i = 0; i < deg_; ++i) {
        if (x.c[i] == 0) continue;
        for (long j = 0; j < deg_; ++j) {
            if (y.c[j] == 0) continue;
            Rat p = x.c[i] * y.c[j];
            const auto& pw = pows_[i + j];
            for (long t = 0; t < deg_; ++t) r.c[t] += p * pw[t];
        }
    }
    return r;
}

CycElem CycField::inv(const CycElem& x) const {
    require(!x.is_zero(), errc::non_unit_divisor, "inverse of zero in Q(mu)");
    // extended Euclid in Q[t] for (x, phi)
    std::vector<Rat> a(x.c), b;
    for (auto& v : phi_) b.push_back(Rat(v));
    while (!a.empty() && a.back() == 0) a.pop_back();
    std::vector<Rat> s0 = {Rat(1)}, s1 = {};
    auto degree = [](const std::vector<Rat>& p) { return (long)p.size() - 1; };
    std::vector<Rat> r0 = a, r1 = b;
    // keep r0 of smaller degree (swap roles)
    std::swap(r0, r1);
    std::swap(s0, s1);
    while (!(r1.empty())) {
        // divide r0 by r1
        std::vector<Rat> q(std::max<long>(degree(r0) - degree(r1) + 1, 0), Rat(0));
        std::vector<Rat> rem = r0;
        for (long i = (long)q.size() - 1; i >= 0; --i) {
            if ((long)rem.size() - 1 < degree(r1) + i) continue;
            Rat f = rem[degree(r1) + i] / r1.back();
            q[i] = f;
            for (long j = 0; j <= degree(r1); ++j) rem[i + j] -= f * r1[j];
        }
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        // s_new = s0 - q*s1
        std::vector<Rat> snew = s0;
        snew.resize(std::max(s0.size(), q.size() + s1.size()), Rat(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) snew[i + j] -= q[i] * s1[j];
        }
        while (!snew.empty() && snew.back() == 0) snew.pop_back();
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = snew;
    }
    // r0 = gcd (a nonzero constant since phi is irreducible and x != 0)
    require(degree(r0) == 0, errc::internal, "cyclotomic inverse: gcd not constant");
    CycElem out = zero();
    for (size_t i = 0; i < s0.size() && i < (size_t)deg_; ++i) out.c[i] = s0[i] / r0[0];
    // s0 might exceed deg_ in theory; verify instead of reducing
    CycElem check = mul(x, out);
    require(is_rational(check) && rational_part(check) == 1, errc::internal,
            "cyclotomic inverse failed");
    return out;
}

CycElem CycField::galois(const CycElem& x, long t) const {
    require(std::gcd(((t % n_) + n_) % n_, n_) == 1, errc::internal, "galois: t not coprime to n");
    CycElem r = zero();
    for (long i = 0; i < deg_; ++i) {
        if (x.c[i] == 0) continue;
        CycElem zp = zeta_pow(i * t);
        for (long j = 0; j < deg_; ++j) r.c[j] += x.c[i] * zp.c[j];
    }
    return r;
}

Rat CycField::trace(const CycElem& x) const {
    CycElem s = zero();
    for (long t = 1; t <= n_; ++t) {
        if (std::gcd(t, n_) != 1) continue;
        s = add(s, galois(x, t));
    }
    require(is_rational(s), errc::internal, "trace not rational");
    return s.c[0];
}

bool CycField::is_rational(const CycElem& x) const {
    for (long i = 1; i < deg_; ++i)
        if (x.c[i] != 0) return false;
    return true;
}

Rat CycField::rational_part(const CycElem& x) const {
    require(is_rational(x), errc::internal, "not rational");
    return x.c[0];
}

} // namespace pstark
