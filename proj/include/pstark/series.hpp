#pragma once

#include <vector>

#include "pstark/cyclotomic.hpp"
#include "pstark/numutil.hpp"

namespace pstark {

// ---- coefficient rings -----------------------------------------------------

// Z/p^W with exact division bookkeeping.  Elements are residues in [0, p^W).
struct ModRing {
    using Elt = Int;
    Int p;
    long W = 0;
    Int modulus;

    ModRing() = default;
    ModRing(Int p_, long W_) : p(std::move(p_)), W(W_), modulus(pow_int(p, W_)) {}

    Elt zero() const { return Int(0); }
    Elt one() const { return Int(1); }
    Elt from_long(long v) const { return fmod(Int(v), modulus); }
    Elt from_int(const Int& v) const { return fmod(v, modulus); }
    Elt from_rat(const Rat& v) const {
        return fmod(Int(fmod(Int(v.get_num()), modulus) * inv_mod(Int(v.get_den()), modulus)),
                    modulus);
    }
    Elt add(const Elt& x, const Elt& y) const { return fmod(Int(x + y), modulus); }
    Elt sub(const Elt& x, const Elt& y) const { return fmod(Int(x - y), modulus); }
    Elt neg(const Elt& x) const { return fmod(Int(-x), modulus); }
    Elt mul(const Elt& x, const Elt& y) const { return fmod(Int(x * y), modulus); }
    bool is_zero(const Elt& x) const { return x == 0; }
    Elt inv(const Elt& x) const {
        require(fmod(x, p) != 0, errc::non_unit_divisor, "non-unit in Z/p^W");
        return inv_mod(x, modulus);
    }
    // exact division by a small integer n (n may contain powers of p);
    // caller is responsible for the precision budget
    Elt div_small(const Elt& x, long n) const {
        Int nn(n);
        long v = valuation(nn, p);
        Elt y = x;
        if (v > 0) {
            Int pv = pow_int(p, v);
            require(fmod(y, pv) == 0, errc::precision_exhausted,
                    "residue not divisible by p^" + std::to_string(v));
            y /= pv;
            nn /= pv;
        }
        return fmod(Int(y * inv_mod(nn, modulus)), modulus);
    }
};

// Q(mu_f)(sqrt(d)): pairs u + v*sqrt(d) with u, v in Q(mu_f).
struct CycQuadElem {
    CycElem u, v;
    bool operator==(const CycQuadElem& o) const { return u == o.u && v == o.v; }
};

struct CycQuadRing {
    using Elt = CycQuadElem;
    CycField cyc;
    Int d;

    CycQuadRing(long f, Int d_) : cyc(f), d(std::move(d_)) {}

    Elt zero() const { return {cyc.zero(), cyc.zero()}; }
    Elt one() const { return {cyc.from_rat(1), cyc.zero()}; }
    Elt from_long(long v) const { return {cyc.from_rat(Rat(v)), cyc.zero()}; }
    Elt from_int(const Int& v) const { return {cyc.from_rat(Rat(v)), cyc.zero()}; }
    Elt from_rat_pair(const Rat& u, const Rat& v) const {
        return {cyc.from_rat(u), cyc.from_rat(v)};
    }
    Elt zeta_value(long t) const { return {cyc.zeta_pow(t), cyc.zero()}; }
    Elt add(const Elt& x, const Elt& y) const { return {cyc.add(x.u, y.u), cyc.add(x.v, y.v)}; }
    Elt sub(const Elt& x, const Elt& y) const { return {cyc.sub(x.u, y.u), cyc.sub(x.v, y.v)}; }
    Elt neg(const Elt& x) const { return {cyc.neg(x.u), cyc.neg(x.v)}; }
    Elt mul(const Elt& x, const Elt& y) const {
        CycElem dd = cyc.from_rat(Rat(d));
        CycElem u = cyc.add(cyc.mul(x.u, y.u), cyc.mul(dd, cyc.mul(x.v, y.v)));
        CycElem v = cyc.add(cyc.mul(x.u, y.v), cyc.mul(x.v, y.u));
        return {u, v};
    }
    bool is_zero(const Elt& x) const { return x.u.is_zero() && x.v.is_zero(); }
    Elt conj_sqrt(const Elt& x) const { return {x.u, cyc.neg(x.v)}; } // sqrt(d) -> -sqrt(d)
    Elt galois(const Elt& x, long t) const { return {cyc.galois(x.u, t), cyc.galois(x.v, t)}; }
    Elt inv(const Elt& x) const {
        require(!is_zero(x), errc::non_unit_divisor, "inverse of zero");
        CycElem dd = cyc.from_rat(Rat(d));
        CycElem nm = cyc.sub(cyc.mul(x.u, x.u), cyc.mul(dd, cyc.mul(x.v, x.v)));
        CycElem ni = cyc.inv(nm);
        return {cyc.mul(x.u, ni), cyc.neg(cyc.mul(x.v, ni))};
    }
    Elt div_small(const Elt& x, long n) const {
        Elt r = x;
        for (auto& c : r.u.c) c /= n;
        for (auto& c : r.v.c) c /= n;
        return r;
    }
};

// ---- truncated bivariate series ---------------------------------------------
// Homogeneous components of total degree 0..M; comp[nu][j] is the coefficient
// of X1^(nu-j) X2^j.
template <class R>
struct Series {
    using Elt = typename R::Elt;
    long M = 0;
    std::vector<std::vector<Elt>> comp;

    static Series zero(const R& ring, long M) {
        Series s;
        s.M = M;
        s.comp.resize(M + 1);
        for (long nu = 0; nu <= M; ++nu) s.comp[nu].assign(nu + 1, ring.zero());
        return s;
    }
    const Elt& at(long i, long l) const { return comp[i + l][l]; }
    Elt& at(long i, long l) { return comp[i + l][l]; }
};

template <class R>
Series<R> series_add(const R& ring, const Series<R>& A, const Series<R>& B) {
    require(A.M == B.M, errc::inconsistent_dimensions, "series degree mismatch");
    Series<R> C = A;
    for (long nu = 0; nu <= A.M; ++nu)
        for (long j = 0; j <= nu; ++j) C.comp[nu][j] = ring.add(C.comp[nu][j], B.comp[nu][j]);
    return C;
}

template <class R>
Series<R> series_sub(const R& ring, const Series<R>& A, const Series<R>& B) {
    require(A.M == B.M, errc::inconsistent_dimensions, "series degree mismatch");
    Series<R> C = A;
    for (long nu = 0; nu <= A.M; ++nu)
        for (long j = 0; j <= nu; ++j) C.comp[nu][j] = ring.sub(C.comp[nu][j], B.comp[nu][j]);
    return C;
}

template <class R>
Series<R> series_scale(const R& ring, const Series<R>& A, const typename R::Elt& s) {
    Series<R> C = A;
    for (auto& row : C.comp)
        for (auto& e : row) e = ring.mul(e, s);
    return C;
}

// hom-product accumulate: dst(degree nu) += a(degree k) * b(degree nu-k)
template <class R>
void hom_addmul(const R& ring, std::vector<typename R::Elt>& dst,
                const std::vector<typename R::Elt>& a, const std::vector<typename R::Elt>& b) {
    long ka = (long)a.size() - 1, kb = (long)b.size() - 1;
    for (long j1 = 0; j1 <= ka; ++j1) {
        if (ring.is_zero(a[j1])) continue;
        for (long j2 = 0; j2 <= kb; ++j2)
            dst[j1 + j2] = ring.add(dst[j1 + j2], ring.mul(a[j1], b[j2]));
    }
}

// mpz fast path: accumulate without intermediate reduction
inline void hom_addmul(const ModRing&, std::vector<Int>& dst, const std::vector<Int>& a,
                       const std::vector<Int>& b) {
    long ka = (long)a.size() - 1, kb = (long)b.size() - 1;
    for (long j1 = 0; j1 <= ka; ++j1) {
        if (a[j1] == 0) continue;
        for (long j2 = 0; j2 <= kb; ++j2)
            mpz_addmul(dst[j1 + j2].get_mpz_t(), a[j1].get_mpz_t(), b[j2].get_mpz_t());
    }
}

template <class R>
void hom_reduce(const R&, std::vector<typename R::Elt>&) {}
inline void hom_reduce(const ModRing& ring, std::vector<Int>& v) {
    for (auto& x : v) x = fmod(x, ring.modulus);
}

template <class R>
Series<R> series_mul(const R& ring, const Series<R>& A, const Series<R>& B) {
    require(A.M == B.M, errc::inconsistent_dimensions, "series degree mismatch");
    Series<R> C = Series<R>::zero(ring, A.M);
    for (long nu = 0; nu <= A.M; ++nu) {
        for (long k = 0; k <= nu; ++k) hom_addmul(ring, C.comp[nu], A.comp[k], B.comp[nu - k]);
        hom_reduce(ring, C.comp[nu]);
    }
    return C;
}

// A/B by the homogeneous recurrence; B's constant term must be a unit.
template <class R>
Series<R> series_div(const R& ring, const Series<R>& A, const Series<R>& B) {
    require(A.M == B.M, errc::inconsistent_dimensions, "series degree mismatch");
    typename R::Elt b0inv = ring.inv(B.comp[0][0]); // throws NonUnitDivisor
    Series<R> Q = Series<R>::zero(ring, A.M);
    for (long nu = 0; nu <= A.M; ++nu) {
        std::vector<typename R::Elt> acc(nu + 1, ring.zero());
        for (long k = 1; k <= nu; ++k) hom_addmul(ring, acc, B.comp[k], Q.comp[nu - k]);
        hom_reduce(ring, acc);
        for (long j = 0; j <= nu; ++j)
            Q.comp[nu][j] = ring.mul(ring.sub(A.comp[nu][j], acc[j]), b0inv);
    }
    return Q;
}

// series from u(X1) * v(X2), where u, v are single-variable coefficient lists
template <class R>
Series<R> outer_product(const R& ring, const std::vector<typename R::Elt>& u,
                        const std::vector<typename R::Elt>& v, long M) {
    Series<R> C = Series<R>::zero(ring, M);
    for (long i = 0; i < (long)u.size() && i <= M; ++i)
        for (long l = 0; l < (long)v.size() && i + l <= M; ++l) C.at(i, l) = ring.mul(u[i], v[l]);
    return C;
}

// binomial series (1+X)^alpha to degree M (single variable)
template <class R>
std::vector<typename R::Elt> binom_series(const R& ring, const typename R::Elt& alpha, long M) {
    std::vector<typename R::Elt> b(M + 1, ring.zero());
    b[0] = ring.one();
    for (long n = 1; n <= M; ++n) {
        auto t = ring.mul(b[n - 1], ring.sub(alpha, ring.from_long(n - 1)));
        b[n] = ring.div_small(t, n);
    }
    return b;
}

// Delta = (1+X1)(1+X2) d^2/dX1 dX2
template <class R>
Series<R> apply_delta(const R& ring, const Series<R>& A) {
    Series<R> C = Series<R>::zero(ring, A.M);
    for (long nu = 0; nu <= A.M; ++nu)
        for (long j = 0; j <= nu; ++j) {
            long i = nu - j, l = j;
            if (i == 0 || l == 0) continue;
            if (ring.is_zero(A.comp[nu][j])) continue;
            auto t = ring.mul(A.comp[nu][j], ring.from_long(i * l));
            // (X1^(i-1) + X1^i)(X2^(l-1) + X2^l) * t
            for (int di = 0; di <= 1; ++di)
                for (int dl = 0; dl <= 1; ++dl) {
                    long ii = i - 1 + di, ll = l - 1 + dl;
                    if (ii + ll > A.M) continue;
                    C.at(ii, ll) = ring.add(C.at(ii, ll), t);
                }
        }
    return C;
}

template <class R>
typename R::Elt delta_power_at_zero(const R& ring, Series<R> A, long n) {
    require(A.M >= 2 * n, errc::insufficient_degree,
            "series degree must be at least 2n for Delta^n at 0");
    for (long k = 0; k < n; ++k) A = apply_delta(ring, A);
    return A.comp[0][0];
}

// V on one axis: in the (1+X)-power basis along that axis, kill every index
// not divisible by p.  Exact on polynomial inputs; no division by p occurs.
template <class R>
Series<R> apply_V(const R& ring, const Series<R>& A, int axis, long p) {
    Series<R> C = Series<R>::zero(ring, A.M);
    for (long fixed = 0; fixed <= A.M; ++fixed) {
        long len = A.M - fixed + 1; // coefficients along the moving axis
        std::vector<typename R::Elt> a(len);
        for (long i = 0; i < len; ++i)
            a[i] = axis == 1 ? A.at(i, fixed) : A.at(fixed, i);
        // beta_m = sum_{i>=m} (-1)^(i-m) C(i,m) a_i, keep p | m only
        std::vector<typename R::Elt> beta(len, ring.zero());
        for (long m = 0; m < len; m += p) {
            auto s = ring.zero();
            for (long i = m; i < len; ++i) {
                auto t = ring.mul(a[i], ring.from_int(binomial(Int(i), m)));
                s = ((i - m) % 2 == 0) ? ring.add(s, t) : ring.sub(s, t);
            }
            beta[m] = s;
        }
        for (long i = 0; i < len; ++i) {
            auto s = ring.zero();
            for (long m = i; m < len; ++m) {
                if (m % p != 0 || ring.is_zero(beta[m])) continue;
                s = ring.add(s, ring.mul(beta[m], ring.from_int(binomial(Int(m), i))));
            }
            if (axis == 1)
                C.at(i, fixed) = s;
            else
                C.at(fixed, i) = s;
        }
    }
    return C;
}

template <class R>
Series<R> apply_U(const R& ring, const Series<R>& A, long p) {
    Series<R> v1 = apply_V(ring, A, 1, p);
    Series<R> v2 = apply_V(ring, A, 2, p);
    Series<R> v12 = apply_V(ring, v2, 1, p);
    return series_add(ring, series_sub(ring, series_sub(ring, A, v1), v2), v12);
}

} // namespace pstark
