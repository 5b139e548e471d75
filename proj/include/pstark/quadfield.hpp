#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pstark/matrix.hpp"
#include "pstark/numutil.hpp"

namespace pstark {

// Element a + b*omega of k = Q(sqrt(d)), omega = (d + sqrt(d))/2.
// Addition is coordinate-wise and field-independent; anything involving the
// multiplication law lives on QuadField.
struct QuadElem {
    Rat a, b;

    QuadElem() : a(0), b(0) {}
    QuadElem(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}
    static QuadElem integer(const Rat& n) { return {n, Rat(0)}; }

    QuadElem operator+(const QuadElem& o) const { return {a + o.a, b + o.b}; }
    QuadElem operator-(const QuadElem& o) const { return {a - o.a, b - o.b}; }
    QuadElem operator-() const { return {-a, -b}; }
    bool operator==(const QuadElem& o) const { return a == o.a && b == o.b; }
    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    std::string str() const;
};

// Fractional ideal (or Z-lattice) scale * (Z*a + Z*(b + c*omega)),
// canonical: a, c > 0, 0 <= b < a, gcd(a, b, c) = 1, scale > 0.
struct QuadIdeal {
    Rat scale;
    Int a, b, c;

    bool operator==(const QuadIdeal& o) const {
        return scale == o.scale && a == o.a && b == o.b && c == o.c;
    }
    bool is_integral() const { return scale.get_den() == 1; }
    QuadElem gen1() const { return {Rat(a) * scale, Rat(0)}; }
    QuadElem gen2() const { return {Rat(b) * scale, Rat(c) * scale}; }
    std::string str() const;
};

struct PadicEmbedding {
    Int p;
    long W = 0;           // residues are correct mod p^W
    Int modulus;          // p^W
    Int root;             // lifted square root of d, root^2 = d (mod p^W)
    long f = 1;
    Int zeta;             // primitive f-th root of unity mod p^W (1 when f = 1)
    int root_choice = 0;
    int zeta_choice = 0;
};

class QuadField {
  public:
    // d: positive fundamental discriminant
    explicit QuadField(const Int& d);

    const Int& disc() const { return d_; }
    const QuadElem& fundamental_unit() const { return eps0_; }
    int fundamental_unit_norm() const { return eps0_norm_; } // +1 or -1
    Int omega_trace() const { return d_; }
    Int omega_norm() const { return (d_ * d_ - d_) / 4; }

    // ---- element arithmetic -------------------------------------------
    QuadElem mul(const QuadElem& x, const QuadElem& y) const;
    QuadElem div(const QuadElem& x, const QuadElem& y) const;
    QuadElem inv(const QuadElem& x) const;
    QuadElem conj(const QuadElem& x) const { return {x.a + x.b * Rat(d_), -x.b}; }
    QuadElem pow(QuadElem x, long e) const;
    Rat trace(const QuadElem& x) const { return 2 * x.a + x.b * Rat(d_); }
    Rat norm(const QuadElem& x) const;
    QuadElem sqrt_d() const { return {Rat(-d_), Rat(2)}; } // 2*omega - d

    // coordinates (A, B) with x = A + B*sqrt(d)
    std::pair<Rat, Rat> ab_coords(const QuadElem& x) const {
        return {x.a + x.b * Rat(d_) / 2, x.b / 2};
    }

    // ---- exact order predicates (integer sign analysis, no floats) -----
    // which = 0: sqrt(d) > 0 embedding, which = 1: conjugate embedding
    int sign_at(const QuadElem& x, int which) const;
    bool totally_positive(const QuadElem& x) const {
        return sign_at(x, 0) > 0 && sign_at(x, 1) > 0;
    }
    // sign of iota(x) - iota(y)
    int cmp_at(const QuadElem& x, const QuadElem& y, int which) const {
        return sign_at(x - y, which);
    }
    Int floor_at(const QuadElem& x, int which) const;
    Int ceil_at(const QuadElem& x, int which) const;
    // correctly rounded decimal value of iota_which(x)
    std::string embed_real(const QuadElem& x, int which, int digits) const;

    // ---- ideals ---------------------------------------------------------
    QuadIdeal ideal_O() const { return {Rat(1), 1, 0, 1}; }
    QuadIdeal ideal_from_generators(const std::vector<QuadElem>& gens) const;
    QuadIdeal principal_ideal(const QuadElem& x) const;
    QuadIdeal different() const { return principal_ideal(sqrt_d()); }
    QuadIdeal mul(const QuadIdeal& I, const QuadIdeal& J) const;
    QuadIdeal mul(const QuadIdeal& I, const QuadElem& x) const;
    QuadIdeal inv(const QuadIdeal& I) const;
    QuadIdeal pow(const QuadIdeal& I, long e) const;
    QuadIdeal conj(const QuadIdeal& I) const;
    Rat norm(const QuadIdeal& I) const { return I.scale * I.scale * Rat(I.a * I.c); }
    bool contains(const QuadIdeal& I, const QuadElem& x) const;
    bool subset(const QuadIdeal& I, const QuadIdeal& J) const; // I subset of J
    bool omega_closed(const QuadIdeal& I) const;
    // generalized index |I : (x)| = |N(x)| / N(I)
    Rat index_of_element(const QuadIdeal& I, const QuadElem& x) const;
    // coordinates of x in the basis (gen1, gen2) of I; error if not in I
    std::pair<Rat, Rat> coords_in(const QuadIdeal& I, const QuadElem& x) const;

    // primes above p, ordered by (norm, hnf lex)
    std::vector<QuadIdeal> primes_above(const Int& p) const;
    long ord_at(const QuadIdeal& I, const QuadIdeal& prime) const;
    bool coprime_to(const QuadIdeal& I, const Int& n) const;
    // prime ideals with norm in [2, limit], sorted by (norm, lex)
    std::vector<QuadIdeal> prime_ideals_upto(const Int& limit) const;

    // ---- reduction / principality --------------------------------------
    // generator of I when I is principal (I integral, primitive)
    std::optional<QuadElem> principal_generator(const QuadIdeal& I) const;
    // generator of arbitrary fractional principal ideal
    std::optional<QuadElem> principal_generator_frac(const QuadIdeal& I) const;

    // smallest power of_eps0 that is totally positive and == 1 mod f
    QuadElem ray_unit(const QuadIdeal& f) const;
    long ray_unit_exponent(const QuadIdeal& f) const;

    // ---- residues mod an integral ideal ---------------------------------
    // canonical representative of x (integral coords) modulo the lattice of f
    std::pair<Int, Int> residue(const QuadIdeal& f, const QuadElem& x) const;
    // x == 1 (mod* f) for x coprime to f; works for non-integral x
    bool is_one_mod_star(const QuadIdeal& f, const QuadElem& x) const;

    PadicEmbedding make_padic_embedding(const Int& p, long f, int root_choice, int zeta_choice,
                                        long W) const;
    // residue of x mod p^W under the embedding sending sqrt(d) to sign*root
    Int embed_padic(const PadicEmbedding& emb, const QuadElem& x, int which) const;

  private:
    Int d_;
    Int sqrt_floor_;
    QuadElem eps0_;
    int eps0_norm_ = 0;
    // principal reduction cycle: normalized (a, b) -> generator g with
    // ideal(a,b) = (g) O
    std::map<std::pair<Int, Int>, QuadElem> principal_cycle_;

    std::pair<Int, Int> normalize_ab(const Int& a, const Int& b) const;
    // one reduction step; returns next (a,b) and the multiplier mu with
    // next = mu * current
    std::pair<std::pair<Int, Int>, QuadElem> reduce_step(const Int& a, const Int& b) const;
    void build_principal_cycle();
    QuadIdeal ideal_ab(const Int& a, const Int& b) const; // Za + Z(b+omega)
};

} // namespace pstark
