#include <random>

#include "doctest.h"
#include "pstark/quadfield.hpp"

using namespace pstark;

namespace {
QuadElem elem(long a, long b) { return {Rat(a), Rat(b)}; }
} // namespace

TEST_CASE("trace and norm") {
    QuadField k(Int(37));
    CHECK(k.trace(elem(1, 0)) == 2);
    CHECK(k.norm(elem(1, 0)) == 1);
    // 6 + sqrt(37) = -31 + 2*omega
    QuadElem x = elem(-31, 2);
    CHECK(k.trace(x) == 12);
    CHECK(k.norm(x) == -1);
    CHECK(k.trace(elem(0, 1)) == 37);
    CHECK(k.norm(elem(0, 1)) == 333);
}

TEST_CASE("trace/norm additivity and multiplicativity on random elements") {
    QuadField k(Int(29));
    std::mt19937 rng(7);
    auto rnd = [&] {
        Rat a((long)(rng() % 41) - 20, 1 + rng() % 5), b((long)(rng() % 41) - 20, 1 + rng() % 5);
        a.canonicalize();
        b.canonicalize();
        return QuadElem{a, b};
    };
    for (int i = 0; i < 50; ++i) {
        QuadElem x = rnd(), y = rnd();
        CHECK(k.trace(x + y) == k.trace(x) + k.trace(y));
        CHECK(k.norm(k.mul(x, y)) == k.norm(x) * k.norm(y));
        if (!y.is_zero()) CHECK(k.mul(k.div(x, y), y) == x);
    }
}

TEST_CASE("fundamental units") {
    // d = 8: 1 + sqrt(2); omega = 4 + sqrt(2)
    QuadField k8(Int(8));
    CHECK(k8.fundamental_unit() == elem(-3, 1));
    CHECK(k8.fundamental_unit_norm() == -1);
    // d = 5: (1+sqrt(5))/2 = omega - 2
    QuadField k5(Int(5));
    CHECK(k5.fundamental_unit() == elem(-2, 1));
    CHECK(k5.fundamental_unit_norm() == -1);
    // d = 37: 6 + sqrt(37)
    QuadField k37(Int(37));
    CHECK(k37.fundamental_unit() == elem(-31, 2));
    CHECK(k37.fundamental_unit_norm() == -1);
}

TEST_CASE("fundamental unit minimality by brute scan, d <= 100") {
    for (long d = 5; d <= 100; ++d) {
        if (d % 4 != 0 && d % 4 != 1) continue;
        bool fundamental = true;
        long core = d % 4 == 0 ? d / 4 : d;
        for (long q = 2; q * q <= core; ++q)
            if (core % (q * q) == 0) fundamental = false;
        if (d % 4 == 0 && (d / 4) % 4 == 1) fundamental = false;
        if (d % 4 == 0 && (d / 4) % 4 == 0) fundamental = false;
        if (!fundamental) continue;
        QuadField k((Int(d)));
        QuadElem e0 = k.fundamental_unit();
        CHECK(k.sign_at(e0 - QuadElem::integer(1), 0) > 0);
        Rat n = k.norm(e0);
        CHECK((n == 1 || n == -1));
        // no unit x = a + b*omega with 1 < iota_1(x) < iota_1(e0): scan b
        Int bmax = abs(Int(e0.b.get_num()));
        for (Int b(1); b <= bmax; ++b) {
            // solve a^2 + a b T + b^2 Nw = +-1 for integer a
            for (int s : {1, -1}) {
                Int T = k.omega_trace(), Nw = k.omega_norm();
                Int disc = b * b * T * T - 4 * (b * b * Nw - s);
                if (disc < 0 || !is_square(disc)) continue;
                Int sq = isqrt(disc);
                for (int pm : {1, -1}) {
                    Int num = -b * T + pm * sq;
                    if (fmod(num, Int(2)) != 0) continue;
                    QuadElem x{Rat(num / 2), Rat(b)};
                    if (k.sign_at(x - QuadElem::integer(1), 0) <= 0) continue;
                    // x is a unit > 1; it must not be below e0
                    CHECK(k.cmp_at(x, e0, 0) >= 0);
                }
            }
        }
    }
}

TEST_CASE("exact sign predicates and embeddings") {
    QuadField k(Int(37));
    QuadElem sq = k.sqrt_d();
    CHECK(k.embed_real(sq, 0, 10) == "6.0827625303");
    CHECK(k.embed_real(sq, 1, 10) == "-6.0827625303");
    CHECK(k.embed_real(elem(1, 0), 0, 3) == "1.000");
    // sign test on x = 6 + sqrt(37): positive under iota_1, negative under
    // iota_2 (6^2 < 37), so not totally positive
    QuadElem x = QuadElem::integer(6) + sq;
    CHECK(k.sign_at(x, 0) > 0);
    CHECK(k.sign_at(x, 1) < 0);
    CHECK(!k.totally_positive(x));
    CHECK(k.totally_positive(QuadElem::integer(7) + sq)); // 7^2 > 37
    CHECK(k.totally_positive(QuadElem::integer(7) - sq));
    // floors and ceilings
    CHECK(k.floor_at(sq, 0) == 6);
    CHECK(k.ceil_at(sq, 0) == 7);
    CHECK(k.floor_at(sq, 1) == -7);
    CHECK(k.floor_at(elem(3, 0), 0) == 3);
    CHECK(k.ceil_at(elem(3, 0), 0) == 3);
}

TEST_CASE("embed_real is multiplicative to the printed precision") {
    QuadField k(Int(29));
    QuadElem x = elem(2, 3), y = elem(-1, 5);
    for (int which : {0, 1}) {
        Rat vx = parse_decimal(k.embed_real(x, which, 30));
        Rat vy = parse_decimal(k.embed_real(y, which, 30));
        Rat vxy = parse_decimal(k.embed_real(k.mul(x, y), which, 30));
        Rat diff = vx * vy - vxy;
        if (diff < 0) diff = -diff;
        CHECK(diff < Rat(1, pow_int(10, 25)));
    }
}

TEST_CASE("ideal arithmetic") {
    QuadField k(Int(37));
    QuadIdeal O = k.ideal_O();
    // |O : (2)| = 4
    CHECK(k.index_of_element(O, elem(2, 0)) == 4);
    QuadIdeal I2 = k.principal_ideal(elem(2, 0));
    CHECK(k.mul(I2, k.inv(I2)) == O);
    CHECK(k.norm(I2) == 4);
    // the different (sqrt(37))
    QuadIdeal D = k.different();
    CHECK(k.norm(D) == 37);
    CHECK(k.mul(D, k.inv(D)) == O);
    CHECK(k.omega_closed(D));
    // membership
    CHECK(k.contains(O, elem(5, -3)));
    CHECK(!k.contains(I2, elem(1, 0)));
    CHECK(k.contains(I2, elem(2, 0)));
}

TEST_CASE("primes above p and valuations") {
    QuadField k(Int(37));
    // 37 = 2 mod 5 is a non-residue: 5 inert
    auto p5 = k.primes_above(Int(5));
    REQUIRE(p5.size() == 1);
    CHECK(k.norm(p5[0]) == 25);
    // 7: 37 = 2 mod 7, 3^2 = 2: split
    auto p7 = k.primes_above(Int(7));
    REQUIRE(p7.size() == 2);
    CHECK(k.norm(p7[0]) == 7);
    CHECK(k.norm(p7[1]) == 7);
    CHECK(k.mul(p7[0], p7[1]) == k.principal_ideal(elem(7, 0)));
    // 37 ramifies
    auto p37 = k.primes_above(Int(37));
    REQUIRE(p37.size() == 1);
    CHECK(k.mul(p37[0], p37[0]) == k.principal_ideal(elem(37, 0)));
    CHECK(k.ord_at(k.principal_ideal(elem(7, 0)), p7[0]) == 1);
    CHECK(k.ord_at(k.inv(k.principal_ideal(elem(7, 0))), p7[1]) == -1);
    CHECK(k.ord_at(k.ideal_O(), p7[0]) == 0);
    CHECK(k.coprime_to(p7[0], Int(5)));
    CHECK(!k.coprime_to(p7[0], Int(7)));
}

TEST_CASE("principal generator recovery") {
    for (long d : {5L, 8L, 37L, 40L, 89L, 328L, 401L, 709L}) {
        QuadField k((Int(d)));
        std::mt19937 rng(17 + d);
        for (int i = 0; i < 10; ++i) {
            QuadElem x{Rat((long)(rng() % 30) - 15), Rat((long)(rng() % 30) - 15)};
            if (x.is_zero()) continue;
            QuadIdeal I = k.principal_ideal(x);
            QuadIdeal J{Rat(1), I.a, I.b, I.c}; // primitive part
            auto g = k.principal_generator(J);
            REQUIRE(g.has_value());
            CHECK(k.principal_ideal(*g) == J);
        }
    }
    // a non-principal ideal: d = 328 = 4*82 has class number 4; the prime
    // above 3 is non-principal (norm 3 is not represented)
    QuadField k(Int(328));
    auto p3 = k.primes_above(Int(3));
    REQUIRE(p3.size() == 2);
    CHECK(!k.principal_generator(p3[0]).has_value());
}

TEST_CASE("ray unit generator") {
    QuadField k37(Int(37));
    // f = O: N(eps0) = -1 forces squaring
    CHECK(k37.ray_unit_exponent(k37.ideal_O()) == 2);
    QuadField k5(Int(5));
    QuadElem e = k5.ray_unit(k5.ideal_O());
    // ((1+sqrt5)/2)^2 = (3+sqrt5)/2 = omega - 1
    CHECK(e == elem(-1, 1));
    // f = 2O for d = 37: eps0 = 1 mod 2 already, but N = -1, so n = 2
    QuadIdeal f2 = k37.principal_ideal(elem(2, 0));
    long n = k37.ray_unit_exponent(f2);
    CHECK(n == 2);
    QuadElem eps = k37.ray_unit(f2);
    CHECK(k37.totally_positive(eps));
    CHECK(k37.contains(f2, eps - QuadElem::integer(1)));
    // brute check minimality
    for (long j = 1; j < n; ++j) {
        QuadElem u = k37.pow(k37.fundamental_unit(), j);
        bool ok = k37.norm(u) == 1 && k37.contains(f2, u - QuadElem::integer(1));
        CHECK(!ok);
    }
}

TEST_CASE("p-adic embeddings") {
    QuadField k(Int(37));
    auto emb = k.make_padic_embedding(Int(7), 2, 0, 0, 1);
    CHECK(emb.root == 3); // 3^2 = 9 = 37 mod 7
    auto emb1 = k.make_padic_embedding(Int(7), 2, 1, 0, 1);
    CHECK(emb1.root == 4);
    CHECK(fmod(Int(emb.root + emb1.root), Int(7)) == 0);
    CHECK_THROWS_AS((void)k.make_padic_embedding(Int(5), 2, 0, 0, 4), error);
    // f = 2: zeta = p - 1
    auto emb2 = k.make_padic_embedding(Int(11), 2, 0, 0, 5);
    CHECK(emb2.zeta == pow_int(11, 5) - 1);
    // high precision root
    auto emb3 = k.make_padic_embedding(Int(7), 2, 0, 0, 30);
    CHECK(fmod(Int(emb3.root * emb3.root - 37), pow_int(7, 30)) == 0);
    CHECK(fmod(Int(emb3.root - 3), Int(7)) == 0);
    // embedding is a ring hom mod p^W
    QuadElem x{Rat(3, 2), Rat(5)}, y{Rat(-1), Rat(7, 4)};
    Int mx = k.embed_padic(emb3, x, 0), my = k.embed_padic(emb3, y, 0);
    CHECK(k.embed_padic(emb3, k.mul(x, y), 0) == fmod(Int(mx * my), emb3.modulus));
    // the two embeddings multiply to the norm
    Int m2 = k.embed_padic(emb3, x, 1);
    CHECK(fmod(Int(mx * m2), emb3.modulus) == fmod(Int(fmod(Int(k.norm(x).get_num()), emb3.modulus) * inv_mod(Int(k.norm(x).get_den()), emb3.modulus)), emb3.modulus));
}

TEST_CASE("residues and multiplicative congruences") {
    QuadField k(Int(37));
    QuadIdeal f2 = k.principal_ideal(elem(2, 0));
    auto r = k.residue(f2, elem(5, 3));
    CHECK(r.first == 1);
    CHECK(r.second == 1);
    CHECK(k.is_one_mod_star(f2, elem(3, 2)));
    CHECK(!k.is_one_mod_star(f2, elem(2, 1)));
    CHECK(!k.is_one_mod_star(f2, elem(0, 1)));
    // non-integral elements with denominator coprime to 2
    CHECK(k.is_one_mod_star(f2, QuadElem{Rat(5, 3), Rat(0)}));
    CHECK(k.is_one_mod_star(f2, QuadElem{Rat(1, 3), Rat(2, 3)}));
    CHECK(!k.is_one_mod_star(f2, QuadElem{Rat(2, 3), Rat(1, 3)}));
}
