#include "pstark/shintani.hpp"

#include <algorithm>

namespace pstark {

// sign of det(iota(x); iota(y)) with iota = (iota_first, iota_other).
// In sqrt(d)-coordinates the determinant is 2(B_x A_y - A_x B_y) sqrt(d),
// so only the rational factor needs a sign.
static int det_sign(const QuadField& k, const QuadElem& x, const QuadElem& y, int first) {
    auto [Ax, Bx] = k.ab_coords(x);
    auto [Ay, By] = k.ab_coords(y);
    int s = sgn(Rat(Bx * Ay - Ax * By));
    return first == 0 ? s : -s;
}

std::pair<QuadElem, QuadElem> initial_basis_pair(const QuadField& k, const QuadIdeal& I,
                                                 int first) {
    require(k.norm(I) != 0, errc::zero_ideal, "initial_basis_pair");
    QuadElem g1 = I.gen1(), g2 = I.gen2();
    for (long B = 1; B <= 64; B *= 2) {
        std::vector<QuadElem> cand;
        for (long u = -B; u <= B; ++u)
            for (long v = -B; v <= B; ++v) {
                if (u == 0 && v == 0) continue;
                QuadElem x{g1.a * u + g2.a * v, g1.b * u + g2.b * v};
                if (k.totally_positive(x)) cand.push_back(x);
            }
        for (auto& x : cand)
            for (auto& y : cand) {
                // coordinate determinant +-1 <=> Zx + Zy = I
                auto [a1, b1] = k.coords_in(I, x);
                auto [a2, b2] = k.coords_in(I, y);
                Rat det = a1 * b2 - a2 * b1;
                if (det != 1 && det != -1) continue;
                if (k.cmp_at(x, y, first) <= 0) continue;
                if (det_sign(k, x, y, first) <= 0) continue;
                return {x, y};
            }
    }
    fail(errc::internal, "no initial basis pair within scan bound 64");
}

std::vector<QuadElem> enumerate_parallelogram(const QuadField& k, const QuadIdeal& I,
                                              const QuadElem& tau1, const QuadElem& tau2) {
    auto [a1, b1] = k.coords_in(I, tau1);
    auto [a2, b2] = k.coords_in(I, tau2);
    require(a1.get_den() == 1 && b1.get_den() == 1 && a2.get_den() == 1 && b2.get_den() == 1,
            errc::not_in_ideal, "tau not in I");
    ZMat T(2, 2);
    T(0, 0) = Int(a1.get_num());
    T(1, 0) = Int(b1.get_num());
    T(0, 1) = Int(a2.get_num());
    T(1, 1) = Int(b2.get_num());
    Int dt = det(T);
    require(dt != 0, errc::dependent_generators, "tau1, tau2 dependent");
    ZMat H = hnf_cols(T);
    // H is [[p, 0], [x, q]] up to pivot placement; coset reps (i, j),
    // 0 <= i < H(0,0), 0 <= j < H(1,1)
    Int P = H(0, 0), Q = H(1, 1);
    require(P * Q == abs(dt), errc::internal, "coset count mismatch");

    // solve for (lambda, mu) coordinates of a point in the (tau1, tau2) basis
    QMat S(2, 2);
    S(0, 0) = a1;
    S(1, 0) = b1;
    S(0, 1) = a2;
    S(1, 1) = b2;
    QMat Sinv = inverse(S);

    QuadElem g1 = I.gen1(), g2 = I.gen2();
    std::vector<QuadElem> out;
    for (Int i(0); i < P; ++i)
        for (Int j(0); j < Q; ++j) {
            // lattice point i*g1 + j*g2, reduced into P(tau1, tau2)
            Rat ci(i), cj(j);
            Rat lam = Sinv(0, 0) * ci + Sinv(0, 1) * cj;
            Rat mu = Sinv(1, 0) * ci + Sinv(1, 1) * cj;
            // 0 < lambda <= 1, 0 <= mu < 1
            Rat lf = lam - Rat(rfloor(lam));
            if (lf == 0) lf = 1;
            Rat mf = mu - Rat(rfloor(mu));
            QuadElem pt{tau1.a * lf + tau2.a * mf, tau1.b * lf + tau2.b * mf};
            out.push_back(pt);
        }
    std::sort(out.begin(), out.end(), [](const QuadElem& x, const QuadElem& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    return out;
}

ConeFan continued_fraction_fan(const QuadField& k, const CharPair& pair, const QuadElem& eps) {
    require(k.norm(eps) == 1 && k.totally_positive(eps), errc::internal,
            "eps must be a totally positive unit");
    ConeFan fan;
    fan.eps = eps;
    // orient so that iota_first(eps) < 1 < iota_other(eps)
    fan.first = k.sign_at(eps - QuadElem::integer(1), 0) < 0 ? 0 : 1;
    require(k.sign_at(eps - QuadElem::integer(1), fan.first) < 0, errc::internal,
            "unit embedding orientation");
    int first = fan.first;

    const QuadIdeal& I = pair.I;
    auto [r0, r1] = initial_basis_pair(k, I, first);
    std::vector<QuadElem> rt = {r0, r1};
    std::vector<long> bseq = {0}; // bseq[n]: rt[n+1] = -rt[n-1] + bseq[n]*rt[n]

    long N = -1;
    auto cond_bprime = [&](long n) {
        return k.cmp_at(rt[n - 1], rt[n], first) > 0 && k.cmp_at(rt[n - 1], rt[n], 1 - first) < 0;
    };
    long M = -1, guard = 0;
    for (long n = 1;; ++n) {
        require(++guard < 1000000, errc::internal, "fan iteration runaway");
        if (N < 0 && cond_bprime(n)) N = n;
        if (N >= 0 && n > N) {
            // periodicity: rt[n] == eps * rt[N] closes one period
            if (rt[n] == k.mul(eps, rt[N])) { M = n - N; break; }
        }
        Int b = k.ceil_at(k.div(rt[n - 1], rt[n]), first);
        require(b >= 2, errc::internal, "partial quotient < 2");
        bseq.push_back(b.get_si());
        QuadElem next = -rt[n - 1] + k.mul(QuadElem::integer(Rat(b)), rt[n]);
        require(k.totally_positive(next), errc::internal, "fan element not totally positive");
        rt.push_back(next);
    }

    // choose n0 >= N minimal with rt[n0] not in ker(xi)
    long n0 = -1;
    for (long n = N; n < N + M; ++n)
        if (!kernel_test(k, pair, rt[n])) { n0 = n; break; }
    require(n0 >= 0, errc::kernel_obstruction, "every period vertex lies in ker(xi)");

    // extend rt/bseq far enough to cover rt[n0 + M]
    while ((long)rt.size() <= n0 + M + 1) {
        long n = (long)rt.size() - 1;
        Int b = k.ceil_at(k.div(rt[n - 1], rt[n]), first);
        require(b >= 2, errc::internal, "partial quotient < 2");
        bseq.push_back(b.get_si());
        rt.push_back(-rt[n - 1] + k.mul(QuadElem::integer(Rat(b)), rt[n]));
    }
    require(rt[n0 + M] == k.mul(eps, rt[n0]), errc::internal, "period verification failed");

    auto rp = [&](long m) { return rt[n0 + m]; };
    fan.rho.push_back(rp(0));
    for (long m = 1; m <= M;) {
        bool bad = m < M && kernel_test(k, pair, rp(m));
        if (!bad) {
            fan.rho.push_back(rp(m));
            fan.points.push_back({rp(m - 1)});
            m += 1;
        } else {
            require(m + 1 == M || !kernel_test(k, pair, rp(m + 1)), errc::internal,
                    "consecutive kernel vertices");
            fan.rho.push_back(rp(m + 1));
            std::vector<QuadElem> pts = {rp(m - 1)};
            long b = bseq[n0 + m];
            for (long j = 1; j < b; ++j)
                pts.push_back(k.mul(QuadElem::integer(Rat(j)), rp(m)));
            fan.points.push_back(pts);
            m += 2;
        }
    }
    for (long n = n0 + 1; n <= n0 + M; ++n) fan.partial_quotients.push_back(bseq[n]);

    // invariants: closure, orientation, per-cone point counts
    require(fan.rho.back() == k.mul(eps, fan.rho.front()), errc::internal, "fan closure");
    for (size_t t = 1; t < fan.rho.size(); ++t) {
        require(det_sign(k, fan.rho[t - 1], fan.rho[t], first) > 0, errc::internal,
                "fan orientation flipped");
        auto [a1, b1] = k.coords_in(I, fan.rho[t - 1]);
        auto [a2, b2] = k.coords_in(I, fan.rho[t]);
        Rat idx = a1 * b2 - a2 * b1;
        if (idx < 0) idx = -idx;
        require(Rat((long)fan.points[t - 1].size()) == idx, errc::internal,
                "cone point count != lattice index");
    }
    return fan;
}

} // namespace pstark
