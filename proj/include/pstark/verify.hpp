#pragma once

#include "pstark/cyclotomic.hpp"
#include "pstark/matrix.hpp"
#include "pstark/numutil.hpp"

namespace pstark {

// ---- characters of a finite abelian group -----------------------------------

struct CharacterTable {
    std::vector<long> orders; // invariant factors of G
    unsigned long g = 1;      // |G|
    long exponent = 1;        // lcm of orders
    CycField cyc;             // Q(zeta_exponent)
    // rational classes: Galois orbits of characters, each a list of character
    // indices (mixed-radix over orders); sorted by smallest member, trivial
    // character first
    std::vector<std::vector<unsigned long>> classes;
    std::vector<long> class_order; // order d_i of the characters in class i

    explicit CharacterTable(const std::vector<long>& orders);
    // chi_t(h) as a root of unity in Q(zeta_exponent)
    CycElem chi(unsigned long t, unsigned long h) const;
    long chi_exponent(unsigned long t, unsigned long h) const; // zeta^this
    bool orthogonality_check() const;
};

struct RankData {
    std::vector<long> r;          // r(S, chi) per rational class
    std::vector<Int> e_tilde_gt2; // g * sum of e_chi over classes with r > 2
};
RankData make_rank_data(const CharacterTable& T, const std::vector<long>& ranks);

// ---- group-ring elements over Q ---------------------------------------------

struct GroupRingQ {
    std::vector<long> orders;
    std::vector<Rat> coef;
};

// ---- rational reconstruction -------------------------------------------------

// best continued-fraction approximation with denominator <= bound;
// returns (value, |x - value|)
std::pair<Rat, Rat> rational_reconstruct(const Rat& x, const Int& den_bound);

// ---- solve for A --------------------------------------------------------------

struct SolveAResult {
    GroupRingQ A_exact; // e_{S,2}-projected exact solution
    GroupRingQ A;       // coefficientwise rational reconstruction
    Rat residual;       // max |A_exact - A|
};
// A * Rgamma = Phi0 on the [S,2] characters, zero elsewhere
SolveAResult solve_A(const CharacterTable& T, const RankData& ranks, const GroupRingQ& Rgamma,
                     const GroupRingQ& Phi0, const Int& den_bound);

// ---- lattices ------------------------------------------------------------------

struct LatticeBasis {
    QMat basis; // columns form a Z-basis (canonical HNF up to rational scale)
};
// canonical basis of the lattice generated by the columns
LatticeBasis hnf_lattice(const QMat& gens);
// least positive integer dv with dv * v in L; membership iff dv == 1
std::pair<bool, Int> lattice_membership(const LatticeBasis& L, const std::vector<Rat>& v);
// |L2 : L1| as a positive rational (L1 subset L2 gives an integer)
Rat lattice_index(const LatticeBasis& L1, const LatticeBasis& L2);

// ---- the exterior-square machinery ---------------------------------------------

// Block structure of wedge^2 QU_S: one block per rational class with r_i >= 2
// and pair j < j', each of dimension phi(d_i).  Coordinates are ordered with
// the [S,2] blocks (r_i = 2) last so that hnf column pivots identify the
// intersection with their span.
struct WedgeSpace {
    const CharacterTable* T;
    std::vector<long> ranks;             // per class
    struct Block {
        size_t cls;
        long j, jp;  // pair indices within the class, j < jp
        long dim;    // phi(d_i)
        size_t offset;
        bool in_B2;
    };
    std::vector<Block> blocks;
    long dim = 0;
    long b2_offset = 0; // B2 coordinates occupy [b2_offset, dim)
};
WedgeSpace make_wedge_space(const CharacterTable& T, const std::vector<long>& ranks);

// expand pairwise wedges u_l ^ u_l' of the standard basis into WedgeSpace
// coordinates, given the sigma-action matrix on the u-basis and the isotypic
// vectors v_{i,j} (per class, r_i vectors over the u-basis).  Cyclic G only.
QMat wedge_expand(const WedgeSpace& W, const ZMat& sigma_action,
                  const std::vector<std::vector<std::vector<Rat>>>& v_vectors);

// coordinates of a single wedge combination sum (a_t ^ b_t)
std::vector<Rat> wedge_coords(const WedgeSpace& W, const ZMat& sigma_action,
                              const std::vector<std::vector<std::vector<Rat>>>& v_vectors,
                              const std::vector<std::pair<std::vector<Rat>, std::vector<Rat>>>& terms);

// columns of gens restricted to the [S,2] span (kernel of e~_{S,>2});
// throws if some column has a component outside it
QMat project_S2(const WedgeSpace& W, const QMat& gens);
// the intersection lattice L cap span(B2), read off the hnf
LatticeBasis project_S2_lattice(const WedgeSpace& W, const QMat& gens);

// multiply a vector in B2 coordinates by a QG element (cyclic G)
std::vector<Rat> qg_act_B2(const WedgeSpace& W, const GroupRingQ& A, const std::vector<Rat>& v);

// ---- full per-example verification ----------------------------------------------

struct VerifyInput {
    std::vector<long> orders;         // G
    std::vector<long> ranks;          // per rational class (canonical order)
    GroupRingQ rgamma, phi0;          // parsed decimals
    Int b = 1;                        // index of ZG gamma (Table 3)
    bool prime_power_f = false;       // the f = q^l branch
    Int den_bound = 0;                // 0: default 2 b g^3
    // optional unit data
    bool has_units = false;
    ZMat sigma_action;
    std::vector<std::vector<std::vector<Rat>>> v_vectors;
    std::vector<std::pair<std::vector<Rat>, std::vector<Rat>>> gamma_terms;
    // fallback values when the lattice is not derivable from the data
    bool has_assumed_df = false;
    Int assumed_df = 0;
};

struct VerifyReport {
    GroupRingQ A;
    Rat residual = 0;
    Int d_f = 0;
    bool d_f_computed = false; // false: taken from assumed data
    std::vector<Int> d_f_sigma;
    bool d_f_sigma_computed = false;
    Rat index_eta = 0; // index of ZG eta_f in d_f^{-1} L^{[S,2]}
    bool index_computed = false;
    Int gamma_index = 0; // computed [L^{[S,2]} : ZG gamma] when units present
    bool df_bound_ok = false; // d_f | 2 g^e (resp. g^e)
};

VerifyReport check_conjecture_parts(const VerifyInput& in);

} // namespace pstark
