#include "pstark/selftest.hpp"

#include <random>

#include "pstark/rayclass.hpp"
#include "pstark/verify.hpp"
#include "pstark/zeta.hpp"

namespace pstark {

namespace {
struct Runner {
    std::ostream& os;
    bool all_ok = true;
    void check(const char* name, bool ok) {
        os << (ok ? "  ok    " : "  FAIL  ") << name << "\n";
        all_ok = all_ok && ok;
    }
    template <class F>
    void run(const char* name, F f) {
        bool ok = false;
        try {
            ok = f();
        } catch (const std::exception& e) {
            os << "  EXC   " << name << ": " << e.what() << "\n";
            all_ok = false;
            return;
        }
        check(name, ok);
    }
};
} // namespace

bool selftest(std::ostream& os) {
    Runner r{os};
    std::mt19937 rng(2026);

    r.run("field arithmetic: trace additive, norm multiplicative", [&] {
        QuadField k(Int(29));
        for (int i = 0; i < 40; ++i) {
            Rat a((long)(rng() % 41) - 20, 1 + rng() % 7), b((long)(rng() % 41) - 20, 1 + rng() % 7);
            a.canonicalize();
            b.canonicalize();
            QuadElem x{a, b}, y{b, a};
            if (k.trace(x + y) != k.trace(x) + k.trace(y)) return false;
            if (k.norm(k.mul(x, y)) != k.norm(x) * k.norm(y)) return false;
        }
        return true;
    });

    r.run("padic embedding: root^2 = d, the two roots cancel", [&] {
        QuadField k(Int(37));
        auto e0 = k.make_padic_embedding(Int(7), 2, 0, 0, 12);
        auto e1 = k.make_padic_embedding(Int(7), 2, 1, 0, 12);
        return fmod(Int(e0.root * e0.root - 37), e0.modulus) == 0 &&
               fmod(Int(e0.root + e1.root), e0.modulus) == 0;
    });

    r.run("c_n: recurrence matches the explicit sum; valuation bound", [&] {
        for (long p : {3L, 5L}) {
            CnTable t = c_sequence(Int(p), 80);
            for (long n = 1; n <= 80; ++n) {
                if (t.at(n) != c_explicit(Int(p), n)) return false;
                if (t.at(n) != 0 && valuation(t.at(n), Int(p)) < (n + p - 2) / (p - 1))
                    return false;
            }
        }
        return true;
    });

    r.run("precision plan: p=3, N=24 gives M=63", [&] {
        PrecisionPlan plan = precision_plan(Int(3), 24);
        return plan.M == 63 && fp_exceeds(Int(3), 63, 24) && !fp_exceeds(Int(3), 62, 24);
    });

    r.run("series: V/U operator algebra and Delta commutation", [&] {
        ModRing ring(Int(13), 5);
        for (int rep = 0; rep < 3; ++rep) {
            Series<ModRing> A = Series<ModRing>::zero(ring, 10);
            for (long nu = 0; nu <= 10; ++nu)
                for (long j = 0; j <= nu; ++j) A.comp[nu][j] = ring.from_long(rng() % 100);
            long p = 3;
            auto U = apply_U(ring, A, p);
            auto U2 = apply_U(ring, U, p);
            if (!(U2.comp == U.comp)) return false;
            auto dU = apply_delta(ring, U);
            auto Ud = apply_U(ring, apply_delta(ring, A), p);
            if (!(dU.comp == Ud.comp)) return false;
        }
        return true;
    });

    r.run("series: binomial power is a homomorphism (mod guard digits)", [&] {
        ModRing ring(Int(5), 8);
        auto u = binom_series(ring, ring.from_rat(Rat(7, 3)), 9);
        auto v = binom_series(ring, ring.from_rat(Rat(4, 11)), 9);
        auto w = binom_series(ring, ring.from_rat(Rat(7, 3) + Rat(4, 11)), 9);
        Int mod7 = pow_int(5, 7);
        for (long n = 0; n <= 9; ++n) {
            Int conv(0);
            for (long i = 0; i <= n; ++i) conv += u[i] * v[n - i];
            if (fmod(conv, mod7) != fmod(w[n], mod7)) return false;
        }
        return true;
    });

    r.run("fan: explicit point lists match the generic enumeration", [&] {
        QuadField k(Int(37));
        QuadIdeal f = k.principal_ideal(QuadElem::integer(2));
        CharPair pair = base_pair(k, f);
        ConeFan fan = continued_fraction_fan(k, pair, k.ray_unit(f));
        if (!(fan.rho.back() == k.mul(fan.eps, fan.rho.front()))) return false;
        for (long t = 1; t <= fan.L(); ++t) {
            auto want = enumerate_parallelogram(k, pair.I, fan.rho[t - 1], fan.rho[t]);
            auto got = fan.points[t - 1];
            std::sort(got.begin(), got.end(), [](const QuadElem& x, const QuadElem& y) {
                return std::tie(x.a, x.b) < std::tie(y.a, y.b);
            });
            if (!(got == want)) return false;
        }
        return true;
    });

    r.run("ray class group: d=37, f=2O is C3 and dlog is a homomorphism", [&] {
        QuadField k(Int(37));
        QuadIdeal f = k.principal_ideal(QuadElem::integer(2));
        RayClassGroup G = RayClassGroup::build(k, f, false, Int(7));
        if (!(G.orders() == std::vector<long>{3})) return false;
        auto primes = k.prime_ideals_upto(Int(40));
        std::vector<QuadIdeal> ok;
        for (auto& q : primes)
            if (k.coprime_to(q, Int(14))) ok.push_back(q);
        for (size_t i = 0; i + 1 < ok.size() && i < 3; ++i) {
            auto a = G.class_of(ok[i]), b = G.class_of(ok[i + 1]);
            if (!(G.class_of(k.mul(ok[i], ok[i + 1])) == G.add(a, b))) return false;
        }
        return true;
    });

    r.run("lattices: hnf idempotent, index multiplicative", [&] {
        QMat g(3, 3);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) g(i, j) = Rat((long)(rng() % 9) - 4);
        if (det(g) == 0) g(0, 0) += 10;
        LatticeBasis L1 = hnf_lattice(g.a.empty() ? g : g);
        LatticeBasis L1b = hnf_lattice(L1.basis);
        if (!(L1.basis == L1b.basis)) return false;
        QMat g2 = g;
        for (auto& x : g2.a) x *= 2;
        QMat g3 = g;
        for (auto& x : g3.a) x *= 6;
        LatticeBasis L2 = hnf_lattice(g2), L3 = hnf_lattice(g3);
        return lattice_index(L3, L1) == lattice_index(L3, L2) * lattice_index(L2, L1);
    });

    r.run("rational reconstruction on decimal fixtures", [&] {
        auto [a, ra] = rational_reconstruct(parse_decimal("0.50000000000"), Int(100));
        auto [b, rb] = rational_reconstruct(parse_decimal("0.33333333333"), Int(100));
        auto [c, rc] = rational_reconstruct(parse_decimal("-0.16666666667"), Int(100));
        (void)ra;
        (void)rb;
        (void)rc;
        return a == Rat(1, 2) && b == Rat(1, 3) && c == Rat(-1, 6);
    });

    r.run("character values: xi(omega/(2 sqrt 37)) = -1", [&] {
        QuadField k(Int(37));
        CharPair pair = base_pair(k, k.principal_ideal(QuadElem::integer(2)));
        QuadElem x = k.div(QuadElem{Rat(0), Rat(1)}, k.mul(QuadElem::integer(2), k.sqrt_d()));
        return evaluate(k, pair, x).t == 1 && pair.f_int == 2;
    });

    r.run("Lemma 3A: U . F = F* to degree 4 mod 7^2", [&] {
        QuadField k(Int(37));
        QuadIdeal f = k.principal_ideal(QuadElem::integer(2));
        CharPair pair = base_pair(k, f);
        ConeFan fan = continued_fraction_fan(k, pair, k.ray_unit(f));
        Int p(7);
        long deg = 4, guard = 2, M = deg + 6 * (guard + 2);
        ModRing ring(p, 4);
        auto emb = k.make_padic_embedding(p, 2, 0, 0, 4);
        auto F = build_F_padic(k, ring, emb, pair, fan.rho[0], fan.rho[1],
                               enumerate_parallelogram(k, pair.I, fan.rho[0], fan.rho[1]), M,
                               fan.first);
        auto UF = apply_U(ring, F, 7);
        auto Fs = build_Fstar_padic(k, ring, emb, pair, fan.rho[0], fan.rho[1], deg, fan.first);
        Int modG = pow_int(p, guard);
        for (long nu = 0; nu <= deg; ++nu)
            for (long j = 0; j <= nu; ++j)
                if (fmod(UF.comp[nu][j], modG) != fmod(Fs.comp[nu][j], modG)) return false;
        return true;
    });

    os << (r.all_ok ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
    return r.all_ok;
}

} // namespace pstark
