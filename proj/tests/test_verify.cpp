#include <random>

#include "doctest.h"
#include "pstark/bundles.hpp"
#include "pstark/verify.hpp"

using namespace pstark;

TEST_CASE("character tables and orthogonality") {
    for (auto orders : {std::vector<long>{3}, {10}, {3, 3}}) {
        CharacterTable T(orders);
        CHECK(T.orthogonality_check());
        size_t total = 0;
        for (auto& cl : T.classes) total += cl.size();
        CHECK(total == T.g);
        CHECK(T.classes[0] == std::vector<unsigned long>{0});
    }
    CharacterTable C10({10});
    CHECK(C10.classes.size() == 4); // chi0, {1,3,7,9}, {2,4,6,8}, {5}
    CHECK(C10.class_order[0] == 1);
}

TEST_CASE("idempotent coefficients match the published tables") {
    { // example 3: C4, the order-2 character class has r = 3
        CharacterTable T({4});
        RankData rk = make_rank_data(T, {2, 2, 3});
        CHECK(rk.e_tilde_gt2 == std::vector<Int>{1, -1, 1, -1});
    }
    { // example 14: C6, chi0 and the order-3 class have r = 3
        CharacterTable T({6});
        RankData rk = make_rank_data(T, {3, 2, 3, 2});
        CHECK(rk.e_tilde_gt2 == std::vector<Int>{3, 0, 0, 3, 0, 0});
    }
    { // example 15: C3 x C3
        CharacterTable T({3, 3});
        RankData rk = make_rank_data(T, {2, 3, 2, 2, 2});
        CHECK(rk.e_tilde_gt2 == std::vector<Int>{2, -1, -1, 2, -1, -1, 2, -1, -1});
    }
}

TEST_CASE("rational reconstruction") {
    CHECK(rational_reconstruct(parse_decimal("0.50000000000"), Int(100)).first == Rat(1, 2));
    CHECK(rational_reconstruct(parse_decimal("0.33333333333"), Int(100)).first == Rat(1, 3));
    CHECK(rational_reconstruct(parse_decimal("-0.16666666667"), Int(100)).first == Rat(-1, 6));
    auto [v, r] = rational_reconstruct(Rat(22, 7), Int(50));
    CHECK(v == Rat(22, 7));
    CHECK(r == 0);
    // doubling precision keeps the reconstruction stable
    auto lo = rational_reconstruct(parse_decimal("0.076923076923"), Int(1000));
    auto hi = rational_reconstruct(parse_decimal("0.076923076923076923076923"), Int(1000));
    CHECK(lo.first == Rat(1, 13));
    CHECK(lo.first == hi.first);
}

TEST_CASE("solve_A recovers synthetic exact data") {
    std::mt19937 rng(5);
    for (auto orders : {std::vector<long>{3}, {5}, {2}}) {
        CharacterTable T(orders);
        std::vector<long> ranks(T.classes.size(), 2);
        RankData rk = make_rank_data(T, ranks);
        unsigned long g = T.g;
        for (int rep = 0; rep < 3; ++rep) {
            GroupRingQ A0{orders, {}}, R{orders, {}};
            for (unsigned long h = 0; h < g; ++h) {
                Rat a((long)(rng() % 19) - 9, 1 + rng() % 4);
                a.canonicalize();
                A0.coef.push_back(a);
                R.coef.push_back(Rat((long)(rng() % 19) - 9));
            }
            // Phi = A0 * R (group-ring convolution)
            GroupRingQ Phi{orders, std::vector<Rat>(g, Rat(0))};
            for (unsigned long x = 0; x < g; ++x)
                for (unsigned long y = 0; y < g; ++y) {
                    auto xe = unrank_mixed(x, orders), ye = unrank_mixed(y, orders);
                    std::vector<long> s(xe);
                    for (size_t i = 0; i < s.size(); ++i) s[i] = (xe[i] + ye[i]) % orders[i];
                    Phi.coef[rank_mixed(s, orders)] += A0.coef[x] * R.coef[y];
                }
            try {
                SolveAResult sol = solve_A(T, rk, R, Phi, Int(1000));
                CHECK(sol.A.coef == A0.coef);
                CHECK(sol.residual == 0);
            } catch (const error& e) {
                // the random R can be singular on a character; rerun is fine
                CHECK(e.code() == errc::singular_regulator);
            }
        }
    }
}

TEST_CASE("lattice operations") {
    QMat g2(2, 2);
    g2(0, 0) = 2; g2(1, 1) = 2;
    LatticeBasis L2 = hnf_lattice(g2);
    auto [in2, d2] = lattice_membership(L2, {Rat(1), Rat(0)});
    CHECK(!in2);
    CHECK(d2 == 2);
    QMat g1 = QMat::identity(2);
    CHECK(lattice_index(L2, hnf_lattice(g1)) == 4);
    // hnf idempotence and index multiplicativity on random chains
    std::mt19937 rng(12);
    for (int rep = 0; rep < 5; ++rep) {
        QMat m(3, 3);
        for (auto& x : m.a) x = Rat((long)(rng() % 11) - 5);
        if (det(m) == 0) continue;
        LatticeBasis L = hnf_lattice(m);
        CHECK(hnf_lattice(L.basis).basis == L.basis);
        QMat m2 = m, m3 = m;
        for (auto& x : m2.a) x *= 3;
        for (auto& x : m3.a) x *= 15;
        LatticeBasis La = hnf_lattice(m2), Lb = hnf_lattice(m3);
        CHECK(lattice_index(Lb, L) == lattice_index(Lb, La) * lattice_index(La, L));
    }
}

TEST_CASE("wedge machinery on the example-1 data") {
    ExampleBundle b = load_bundle(bundle_path(1, std::getenv("PSTARK_DATA")
                                                       ? std::getenv("PSTARK_DATA")
                                                       : "data/examples"));
    CharacterTable T(b.group_orders);
    WedgeSpace W = make_wedge_space(T, b.ranks);
    CHECK(W.dim == 3); // phi(1) + phi(3) with both classes of rank 2
    CHECK(W.b2_offset == 0);
    // sigma action has order 3 and fixes the isotypic vectors' classes
    ZMat M3 = mul(b.sigma_action, mul(b.sigma_action, b.sigma_action));
    CHECK(M3 == ZMat::identity(6));
    // wedge is alternating and bilinear
    auto vec = [](std::vector<long> v) {
        std::vector<Rat> r;
        for (long x : v) r.push_back(Rat(x));
        return r;
    };
    auto u = vec({1, 0, -2, 3, 1, 0}), v = vec({0, 2, 1, 0, 0, 1});
    auto zero = wedge_coords(W, b.sigma_action, b.v_vectors, {{u, u}});
    for (auto& c : zero) CHECK(c == 0);
    auto uv = wedge_coords(W, b.sigma_action, b.v_vectors, {{u, v}});
    auto vu = wedge_coords(W, b.sigma_action, b.v_vectors, {{v, u}});
    for (long i = 0; i < W.dim; ++i) CHECK(uv[i] == -vu[i]);
    std::vector<Rat> w(6, Rat(0));
    w[2] = 1;
    auto uw = wedge_coords(W, b.sigma_action, b.v_vectors, {{u, w}});
    std::vector<Rat> upw = u;
    upw[2] += 1;
    auto both = wedge_coords(W, b.sigma_action, b.v_vectors, {{upw, v}});
    auto sum = wedge_coords(W, b.sigma_action, b.v_vectors, {{u, v}, {w, v}});
    for (long i = 0; i < W.dim; ++i) CHECK(both[i] == sum[i]);
    (void)uw;
}

TEST_CASE("full verification pipeline: examples 1 and 4") {
    std::string dir = std::getenv("PSTARK_DATA") ? std::getenv("PSTARK_DATA") : "data/examples";
    {
        ExampleBundle b = load_bundle(bundle_path(1, dir));
        VerifyInput in = verify_input_from_bundle(b, true);
        VerifyReport rep = check_conjecture_parts(in);
        CHECK(rep.A.coef == std::vector<Rat>{Rat(1, 2), Rat(-1, 2), Rat(-1, 2)});
        CHECK(rep.residual < Rat(1, pow_int(10, 20)));
        CHECK(rep.gamma_index == 1);
        CHECK(rep.d_f == 2);
        CHECK(rep.d_f_computed);
        CHECK(rep.d_f_sigma == std::vector<Int>{Int(1)});
        CHECK(rep.index_eta == 4);
        CHECK(rep.df_bound_ok);
        // stability: the 25-digit inputs give the same reconstruction
        VerifyInput lo = verify_input_from_bundle(b, false);
        VerifyReport rep_lo = check_conjecture_parts(lo);
        CHECK(rep_lo.A.coef == rep.A.coef);
    }
    {
        ExampleBundle b = load_bundle(bundle_path(4, dir));
        VerifyReport rep = check_conjecture_parts(verify_input_from_bundle(b, false));
        CHECK(rep.A.coef == std::vector<Rat>{Rat(0), Rat(1, 2)});
        CHECK(rep.gamma_index == 2);
        CHECK(rep.d_f == 2);
        CHECK(rep.index_eta == 2);
    }
}
