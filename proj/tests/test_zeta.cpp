#include "doctest.h"
#include "pstark/zeta.hpp"

using namespace pstark;

namespace {
QuadElem elem(long a, long b) { return {Rat(a), Rat(b)}; }

struct Setup {
    QuadField k;
    QuadIdeal f;
    CharPair pair;
    QuadElem eps;
    ConeFan fan;
    Setup(long d, long fint)
        : k(Int(d)), f(k.principal_ideal(elem(fint, 0))), pair(base_pair(k, f)),
          eps(k.ray_unit(f)), fan(continued_fraction_fan(k, pair, eps)) {}
};
} // namespace

TEST_CASE("c_n initial values and recurrence, p = 3") {
    CnTable t = c_sequence(Int(3), 10);
    CHECK(t.at(1) == -3);
    CHECK(t.at(2) == 3);
    CHECK(t.at(3) == 0); // -(3 c_2 + 3 c_1)
    CHECK(t.at(4) == -9);
    CHECK(valuation(t.at(4), Int(3)) >= 2);
}

TEST_CASE("c_n recurrence matches the explicit binomial sum") {
    for (long p : {3L, 5L, 7L}) {
        CnTable t = c_sequence(Int(p), 60);
        for (long n = 1; n <= 60; ++n) {
            CHECK(t.at(n) == c_explicit(Int(p), n));
            // Lemma bound: ord_p(c_n) >= ceil(n/(p-1))
            if (t.at(n) != 0) CHECK(valuation(t.at(n), Int(p)) >= (n + p - 2) / (p - 1));
        }
    }
}

TEST_CASE("precision plan") {
    PrecisionPlan plan = precision_plan(Int(3), 24);
    CHECK(plan.M == 63);
    CHECK(fp_exceeds(Int(3), 63, 24));
    CHECK(!fp_exceeds(Int(3), 62, 24));
    CHECK(plan.W == 24);
    long ord = 0;
    for (long q = 3; q <= plan.M; q *= 3) ord += plan.M / q;
    CHECK(plan.Wp == 24 + ord);
    // monotonicity on the admissible range
    for (long m = plan.M; m < plan.M + 20; ++m) CHECK(fp_increasing_at(Int(3), m));
    // large p relative to N: M respects both the domain bound and f_p > N,
    // and is minimal for the pair of conditions
    PrecisionPlan p2 = precision_plan(Int(97), 1);
    CHECK(fp_increasing_at(Int(97), p2.M));
    CHECK(fp_exceeds(Int(97), p2.M, 1));
    CHECK((!fp_exceeds(Int(97), p2.M - 1, 1) || !fp_increasing_at(Int(97), p2.M - 1)));
}

TEST_CASE("exact F: constant term is the finite character sum") {
    Setup s(37, 2);
    const QuadElem &t1 = s.fan.rho[0], &t2 = s.fan.rho[1];
    auto pts = enumerate_parallelogram(s.k, s.pair.I, t1, t2);
    CycQuadRing ring(2, Int(37));
    auto F = build_F_exact(s.k, ring, s.pair, t1, t2, pts, 4, s.fan.first);
    // direct: sum xi(a) / ((1-xi(t1))(1-xi(t2)))
    auto xi = [&](const QuadElem& x) {
        return ring.zeta_value(evaluate(s.k, s.pair, x).t);
    };
    auto num = ring.zero();
    for (auto& a : pts) num = ring.add(num, xi(a));
    auto den = ring.mul(ring.sub(ring.one(), xi(t1)), ring.sub(ring.one(), xi(t2)));
    CHECK(F.comp[0][0] == ring.mul(num, ring.inv(den)));
    // z(0) equals F(0,0) and is rational (f = 2)
    CycElem z0 = exact_z_at_m(s.k, ring, s.pair, t1, t2, 0, false);
    CHECK(z0 == F.comp[0][0].u);
}

TEST_CASE("exact z: embedding order invariance and cone additivity at m = 0") {
    Setup s(37, 2);
    CycQuadRing ring(2, Int(37));
    const QuadElem &t1 = s.fan.rho[0], &t2 = s.fan.rho[1];
    CycElem a = exact_z_at_m(s.k, ring, s.pair, t1, t2, 0, false, Int(0), 0);
    CycElem b = exact_z_at_m(s.k, ring, s.pair, t1, t2, 0, false, Int(0), 1);
    CHECK(a == b);
    CycElem m1a = exact_z_at_m(s.k, ring, s.pair, t1, t2, -1, false, Int(0), 0);
    CycElem m1b = exact_z_at_m(s.k, ring, s.pair, t1, t2, -1, false, Int(0), 1);
    CHECK(m1a == m1b);
    // additivity over the fan at m = 0
    CycElem big = exact_z_at_m(s.k, ring, s.pair, s.fan.rho.front(), s.fan.rho.back(), 0, false);
    CycElem sum = ring.cyc.zero();
    for (long t = 1; t <= s.fan.L(); ++t)
        sum = ring.cyc.add(sum,
                           exact_z_at_m(s.k, ring, s.pair, s.fan.rho[t - 1], s.fan.rho[t], 0, false));
    CHECK(big == sum);
}

TEST_CASE("exact z: Galois equivariance for f = 3") {
    QuadField k(Int(5));
    QuadIdeal f = k.principal_ideal(elem(3, 0));
    CharPair pair = base_pair(k, f);
    QuadElem eps = k.ray_unit(f);
    ConeFan fan = continued_fraction_fan(k, pair, eps);
    CycQuadRing ring(3, Int(5));
    for (long m : {0L, -1L}) {
        CycElem z = exact_z_at_m(k, ring, pair, fan.rho[0], fan.rho[1], m, false);
        CycElem zg = ring.cyc.galois(z, 2);
        CycElem z2 = exact_z_at_m(k, ring, twist_pair(pair, 2), fan.rho[0], fan.rho[1], m, false);
        CHECK(zg == z2);
    }
}

TEST_CASE("U . F = F* (Lemma 3A) to degree 6 mod 7^4") {
    Setup s(37, 2);
    Int p(7);
    long deg = 6, guard = 4;
    long M = deg + 6 * (guard + 2); // tail decay ceil((M+1-deg)/(p-1)) - 2 >= guard
    long W = 8;
    auto emb = s.k.make_padic_embedding(p, 2, 0, 0, W);
    ModRing ring(p, W);
    auto F = build_F_padic(s.k, ring, emb, s.pair, s.fan.rho[0], s.fan.rho[1],
                           enumerate_parallelogram(s.k, s.pair.I, s.fan.rho[0], s.fan.rho[1]), M,
                           s.fan.first);
    auto UF = apply_U(ring, F, p.get_si());
    auto Fstar = build_Fstar_padic(s.k, ring, emb, s.pair, s.fan.rho[0], s.fan.rho[1], deg,
                                   s.fan.first);
    Int modG = pow_int(p, guard);
    for (long nu = 0; nu <= deg; ++nu)
        for (long j = 0; j <= nu; ++j)
            CHECK(fmod(UF.comp[nu][j], modG) == fmod(Fstar.comp[nu][j], modG));
}

TEST_CASE("p-adic z at 1: interpolation consistency at m in M(p)") {
    // z_{T_p,p}(1) = z_{T_p,p}(m) mod p^(k+1) for m = 1 - (p-1)p^k, and
    // z_{T_p,p}(m) = j(z_{T_p}(m)) exactly. Two fully independent routes.
    Setup s(37, 2);
    struct Case { long p, kk; };
    for (auto [p, kk] : {Case{3, 1}, Case{3, 2}, Case{7, 1}}) {
        long m = 1 - (p - 1) * (long)pow_int(Int(p), kk).get_si();
        CycQuadRing ring(2, Int(37));
        CycElem zm = exact_z_at_m(s.k, ring, s.pair, s.fan.rho[0], s.fan.rho[1], m, true, Int(p),
                                  s.fan.first);
        PrecisionPlan plan = precision_plan(Int(p), kk + 3);
        auto emb = s.k.make_padic_embedding(Int(p), 2, 0, 0, plan.Wp);
        CnTable cn = c_sequence(Int(p), plan.M);
        Int z1 = padic_z_at_1(s.k, s.pair, s.fan.rho[0], s.fan.rho[1],
                              enumerate_parallelogram(s.k, s.pair.I, s.fan.rho[0], s.fan.rho[1]),
                              plan, emb, s.fan.first, cn);
        Int modK = pow_int(Int(p), kk + 1);
        Int zme = embed_cyclotomic(emb, ring.cyc, zm, modK);
        CHECK(fmod(z1, modK) == zme);
    }
}

TEST_CASE("p-adic z at 1: fan additivity") {
    Setup s(37, 2);
    Int p(7);
    PrecisionPlan plan = precision_plan(p, 6);
    auto emb = s.k.make_padic_embedding(p, 2, 0, 0, plan.Wp);
    Int modN = pow_int(p, plan.N);
    CnTable cn = c_sequence(p, plan.M);
    // single big cone C(rho_0, eps rho_0)
    const QuadElem& r0 = s.fan.rho.front();
    QuadElem reps = s.fan.rho.back();
    Int single = padic_z_at_1(s.k, s.pair, r0, reps,
                              enumerate_parallelogram(s.k, s.pair.I, r0, reps), plan, emb,
                              s.fan.first, cn);
    Int sum(0);
    for (long t = 1; t <= s.fan.L(); ++t)
        sum += padic_z_at_1(s.k, s.pair, s.fan.rho[t - 1], s.fan.rho[t], s.fan.points[t - 1],
                            plan, emb, s.fan.first, cn);
    CHECK(fmod(sum, modN) == single);
}

TEST_CASE("p-adic Z at 1: invariance under pair equivalence and root choice (f = 2)") {
    Setup s(37, 2);
    Int p(7);
    PrecisionPlan plan = precision_plan(p, 6);
    auto emb = s.k.make_padic_embedding(p, 2, 0, 0, plan.Wp);
    Int z = padic_Z_at_1(s.k, s.pair, s.fan, plan, emb);
    // replace I by (alpha) I for alpha = 3 + 2 omega: totally positive,
    // = 1 mod 2O, norm 1563 coprime to 7
    QuadElem alpha = elem(3, 2);
    REQUIRE(s.k.totally_positive(alpha));
    REQUIRE(s.k.contains(s.f, alpha - QuadElem::integer(1)));
    CharPair pair2 = act(s.k, s.pair, s.k.principal_ideal(alpha));
    ConeFan fan2 = continued_fraction_fan(s.k, pair2, s.eps);
    Int z2 = padic_Z_at_1(s.k, pair2, fan2, plan, emb);
    CHECK(z == z2);
    // for f = 2 the two root choices agree
    auto emb1 = s.k.make_padic_embedding(p, 2, 1, 0, plan.Wp);
    Int z3 = padic_Z_at_1(s.k, s.pair, s.fan, plan, emb1);
    CHECK(z == z3);
}
