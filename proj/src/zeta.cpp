#include "pstark/zeta.hpp"

namespace pstark {

CnTable c_sequence(const Int& p, long n_max) {
    require(p > 2 && is_prime(p), errc::internal, "c_sequence: odd prime required");
    CnTable t;
    t.p = p;
    t.c.assign(n_max + 1, Int(0));
    long pi = p.get_si();
    for (long n = 1; n <= n_max && n <= pi - 1; ++n) t.c[n] = (n % 2 ? Int(-p) : p);
    std::vector<Int> binom_p(pi);
    for (long i = 1; i < pi; ++i) binom_p[i] = binomial(p, i);
    for (long n = pi; n <= n_max; ++n) {
        Int s(0);
        for (long i = 1; i <= pi - 1; ++i) s += binom_p[i] * t.c[n - i];
        t.c[n] = -s;
    }
    return t;
}

Int c_explicit(const Int& p, long n) {
    Int s(0);
    for (long r = 0; p * r <= n; ++r) {
        Int term = binomial(Int(n), (unsigned long)(p.get_si() * r));
        s += ((n - p.get_si() * r) % 2 == 0) ? term : Int(-term);
    }
    return p * s;
}

// f_p(M) > N  <=>  p^(M+2-(N+2)(p-1)) > ((M+2)/2)^(2(p-1))
bool fp_exceeds(const Int& p, long M, long N) {
    Int e = Int(M + 2) - Int(N + 2) * (p - 1);
    if (e < 0) return false;
    Int lhs = pow_int(p, e.get_ui()) * pow_int(2, 2 * (p.get_ui() - 1));
    Int rhs = pow_int(Int(M + 2), 2 * (p.get_ui() - 1));
    return lhs > rhs;
}

// f_p'(M) > 0  <=>  (M+2) ln p > 2(p-1)  <=>  p^(M+2) > e^(2(p-1));
// decided with tight rational bounds on e^2
bool fp_increasing_at(const Int& p, long M) {
    // e^2 < 7389056099/10^9
    Int lhs = pow_int(p, M + 2) * pow_int(10, 9 * (p.get_ui() - 1));
    Int rhs = pow_int(Int("7389056099"), p.get_ui() - 1);
    return lhs > rhs;
}

PrecisionPlan precision_plan(const Int& p, long N) {
    require(N >= 1, errc::internal, "precision_plan: N >= 1");
    PrecisionPlan plan;
    plan.N = N;
    long M = 1;
    while (!fp_increasing_at(p, M)) ++M;
    while (!fp_exceeds(p, M, N)) ++M;
    plan.M = M;
    plan.W = N;
    long ordM = 0;
    for (Int q = p; q <= M; q *= p) ordM += M / q.get_si();
    plan.Wp = plan.W + ordM;
    return plan;
}

// ---- generic F construction ---------------------------------------------------

// xi values as ring elements
static CycQuadElem xi_value(const CycQuadRing& ring, const CharValue& v) {
    long n = ring.cyc.n();
    require(v.f == n, errc::internal, "character/ring conductor mismatch");
    return ring.zeta_value(v.t);
}
static Int xi_value(const ModRing& ring, const PadicEmbedding& emb, const CharValue& v) {
    return pow_mod(emb.zeta, Int(v.t), ring.modulus);
}

// exponent of (1+X_axis): the image of iota(x) in the coefficient ring
static CycQuadElem exponent_exact(const QuadField& k, const CycQuadRing& ring, const QuadElem& x,
                                  int which) {
    auto [A, B] = k.ab_coords(x);
    return ring.from_rat_pair(A, which == 0 ? B : Rat(-B));
}

template <class R, class ExpFn, class XiFn>
static Series<R> build_F_generic(const QuadField& k, const R& ring, const CharPair& pair,
                                 const QuadElem& tau1, const QuadElem& tau2,
                                 const std::vector<QuadElem>& points, long M, ExpFn exponent,
                                 XiFn xi) {
    CharValue v1 = evaluate(k, pair, tau1), v2 = evaluate(k, pair, tau2);
    require(!v1.is_one() && !v2.is_one(), errc::kernel_generator,
            "tau lies in ker(xi); the denominator would vanish");

    Series<R> num = Series<R>::zero(ring, M);
    for (const auto& pt : points) {
        auto u = binom_series(ring, exponent(pt, 0), M);
        auto w = binom_series(ring, exponent(pt, 1), M);
        auto term = outer_product(ring, u, w, M);
        term = series_scale(ring, term, xi(evaluate(k, pair, pt)));
        num = series_add(ring, num, term);
    }

    auto denom_factor = [&](const QuadElem& tau, const CharValue& v) {
        auto u = binom_series(ring, exponent(tau, 0), M);
        auto w = binom_series(ring, exponent(tau, 1), M);
        auto t = outer_product(ring, u, w, M);
        t = series_scale(ring, t, xi(v));
        Series<R> one = Series<R>::zero(ring, M);
        one.comp[0][0] = ring.one();
        return series_sub(ring, one, t);
    };
    Series<R> den = series_mul(ring, denom_factor(tau1, v1), denom_factor(tau2, v2));
    return series_div(ring, num, den);
}

Series<CycQuadRing> build_F_exact(const QuadField& k, const CycQuadRing& ring,
                                  const CharPair& pair, const QuadElem& tau1,
                                  const QuadElem& tau2, const std::vector<QuadElem>& points,
                                  long M, int first) {
    return build_F_generic(
        k, ring, pair, tau1, tau2, points, M,
        [&](const QuadElem& x, int axis) {
            return exponent_exact(k, ring, x, axis == 0 ? first : 1 - first);
        },
        [&](const CharValue& v) { return xi_value(ring, v); });
}

Series<ModRing> build_F_padic(const QuadField& k, const ModRing& ring, const PadicEmbedding& emb,
                              const CharPair& pair, const QuadElem& tau1, const QuadElem& tau2,
                              const std::vector<QuadElem>& points, long M, int first) {
    require(ring.modulus == emb.modulus, errc::internal, "ring/embedding modulus mismatch");
    return build_F_generic(
        k, ring, pair, tau1, tau2, points, M,
        [&](const QuadElem& x, int axis) {
            return k.embed_padic(emb, x, axis == 0 ? first : 1 - first);
        },
        [&](const CharValue& v) { return xi_value(ring, emb, v); });
}

// points of I cap P(p tau1, p tau2) with p not dividing |I:(a)|
static std::vector<QuadElem> tp_points(const QuadField& k, const CharPair& pair,
                                       const QuadElem& tau1, const QuadElem& tau2, const Int& p) {
    QuadElem pp = QuadElem::integer(Rat(p));
    auto all = enumerate_parallelogram(k, pair.I, k.mul(pp, tau1), k.mul(pp, tau2));
    std::vector<QuadElem> keep;
    for (auto& a : all) {
        Rat idx = k.index_of_element(pair.I, a);
        require(idx.get_den() == 1, errc::internal, "generalized index not integral");
        if (valuation(Int(idx.get_num()), p) == 0) keep.push_back(a);
    }
    return keep;
}

Series<CycQuadRing> build_Fstar_exact(const QuadField& k, const CycQuadRing& ring,
                                      const CharPair& pair, const QuadElem& tau1,
                                      const QuadElem& tau2, const Int& p, long M, int first) {
    QuadElem pp = QuadElem::integer(Rat(p));
    return build_F_exact(k, ring, pair, k.mul(pp, tau1), k.mul(pp, tau2),
                         tp_points(k, pair, tau1, tau2, p), M, first);
}

Series<ModRing> build_Fstar_padic(const QuadField& k, const ModRing& ring,
                                  const PadicEmbedding& emb, const CharPair& pair,
                                  const QuadElem& tau1, const QuadElem& tau2, long M, int first) {
    QuadElem pp = QuadElem::integer(Rat(emb.p));
    return build_F_padic(k, ring, emb, pair, k.mul(pp, tau1), k.mul(pp, tau2),
                         tp_points(k, pair, tau1, tau2, emb.p), M, first);
}

CycElem exact_z_at_m(const QuadField& k, const CycQuadRing& ring, const CharPair& pair,
                     const QuadElem& tau1, const QuadElem& tau2, long m, bool Tp_mode,
                     const Int& p, int first) {
    require(m <= 0, errc::internal, "exact_z_at_m needs m <= 0");
    long M = 2 * (-m);
    Series<CycQuadRing> F =
        Tp_mode ? build_Fstar_exact(k, ring, pair, tau1, tau2, p, M, first)
                : build_F_exact(k, ring, pair, tau1, tau2,
                                enumerate_parallelogram(k, pair.I, tau1, tau2), M, first);
    CycQuadElem val = delta_power_at_zero(ring, F, -m);
    require(val.v.is_zero(), errc::internal, "sqrt(d)-component of z(m) does not vanish");
    return val.u;
}

Int padic_z_at_1(const QuadField& k, const CharPair& pair, const QuadElem& tau1,
                 const QuadElem& tau2, const std::vector<QuadElem>& points,
                 const PrecisionPlan& plan, const PadicEmbedding& emb, int first,
                 const CnTable& cn) {
    const Int& p = emb.p;
    ModRing ring(p, plan.Wp);
    require(emb.W == plan.Wp, errc::precision_exhausted, "embedding precision below plan");

    Series<ModRing> F = build_F_padic(k, ring, emb, pair, tau1, tau2, points, plan.M, first);
    // (1+X1)^{-1}(1+X2)^{-1} F
    Series<ModRing> D = Series<ModRing>::zero(ring, plan.M);
    D.comp[0][0] = 1;
    if (plan.M >= 1) {
        D.at(1, 0) = 1;
        D.at(0, 1) = 1;
    }
    if (plan.M >= 2) D.at(1, 1) = 1;
    Series<ModRing> G = series_div(ring, F, D);

    Int modN = pow_int(p, plan.N);
    // bracket(i) = c_{i+1} / (p (i+1)), a p-integral exact rational, mod p^N
    auto bracket = [&](long i) {
        long v = valuation(Int(i + 1), p);
        Int pv = pow_int(p, v + 1);
        require((long)cn.c.size() > i + 1, errc::internal, "c_n table too small");
        Int num = cn.at(i + 1);
        require(num == 0 || fmod(num, pv) == 0, errc::precision_exhausted,
                "c_n valuation bound violated");
        num /= pv;
        Int mden = Int(i + 1) / pow_int(p, v);
        return fmod(Int(num * inv_mod(mden, modN)), modN);
    };
    std::vector<Int> br(plan.M);
    for (long i = 0; i < plan.M; ++i) br[i] = bracket(i);

    Int sum(0);
    // term order: increasing i+l, then increasing i (fixed for reproducibility)
    for (long nu = 0; nu < plan.M; ++nu) {
        for (long i = 0; i <= nu; ++i) {
            long l = nu - i;
            Int a_il = fmod(G.at(i, l), modN);
            sum += br[i] * br[l] % modN * a_il;
        }
        sum = fmod(sum, modN);
    }
    return fmod(sum, modN);
}

Int padic_Z_at_1(const QuadField& k, const CharPair& pair, const ConeFan& fan,
                 const PrecisionPlan& plan, const PadicEmbedding& emb) {
    Int modN = pow_int(emb.p, plan.N);
    CnTable cn = c_sequence(emb.p, plan.M);
    Int sum(0);
    for (long t = 1; t <= fan.L(); ++t) {
        sum += padic_z_at_1(k, pair, fan.rho[t - 1], fan.rho[t], fan.points[t - 1], plan, emb,
                            fan.first, cn);
    }
    sum = fmod(sum, modN);
    // NI is a p-adic unit under Hypothesis (3): reduce the exact rational
    Rat NI = k.norm(pair.I);
    Int ni = fmod(Int(fmod(Int(NI.get_num()), modN) * inv_mod(Int(NI.get_den()), modN)), modN);
    return fmod(Int(ni * sum), modN);
}

Int embed_cyclotomic(const PadicEmbedding& emb, const CycField& F, const CycElem& x,
                     const Int& modulus) {
    require(F.n() == emb.f || emb.f % F.n() == 0, errc::internal, "conductor mismatch");
    Int z = pow_mod(emb.zeta, Int(emb.f / F.n()), modulus);
    Int acc(0), zp(1);
    for (long i = 0; i < F.degree(); ++i) {
        const Rat& c = x.c[i];
        acc += fmod(Int(c.get_num()), modulus) * inv_mod(Int(c.get_den()), modulus) % modulus * zp;
        zp = zp * z % modulus;
    }
    return fmod(acc, modulus);
}

} // namespace pstark
