#pragma once

#include "pstark/series.hpp"
#include "pstark/shintani.hpp"

namespace pstark {

// c_n = sum over p-th roots of unity of (zeta - 1)^n, as exact integers
struct CnTable {
    Int p;
    std::vector<Int> c; // c[n] for 1 <= n <= n_max; c[0] unused
    const Int& at(long n) const { return c[n]; }
};

CnTable c_sequence(const Int& p, long n_max);
// independent oracle: the explicit binomial sum in the definition
Int c_explicit(const Int& p, long n);

struct PrecisionPlan {
    long N = 0;  // target digits
    long M = 0;  // series truncation degree
    long W = 0;  // delivered modulus exponent (= N)
    long Wp = 0; // working exponent W + ord_p(M!)
};

// exact check f_p(M) > N  (integer-power comparison, no rounding)
bool fp_exceeds(const Int& p, long M, long N);
// exact check that f_p is increasing at M
bool fp_increasing_at(const Int& p, long M);
PrecisionPlan precision_plan(const Int& p, long N);

// ---- F series ----------------------------------------------------------------
// The generating function of Eq. (3B.5): numerator over the given parallelogram
// points, divided by (1 - xi(tau1)(1+X)^(tau1))(1 - xi(tau2)(1+X)^(tau2)).

struct ExactSeriesCtx {
    CycQuadRing ring;
    ExactSeriesCtx(long f, const Int& d) : ring(f, d) {}
};

Series<CycQuadRing> build_F_exact(const QuadField& k, const CycQuadRing& ring,
                                  const CharPair& pair, const QuadElem& tau1,
                                  const QuadElem& tau2, const std::vector<QuadElem>& points,
                                  long M, int first);
Series<CycQuadRing> build_Fstar_exact(const QuadField& k, const CycQuadRing& ring,
                                      const CharPair& pair, const QuadElem& tau1,
                                      const QuadElem& tau2, const Int& p, long M, int first);

Series<ModRing> build_F_padic(const QuadField& k, const ModRing& ring, const PadicEmbedding& emb,
                              const CharPair& pair, const QuadElem& tau1, const QuadElem& tau2,
                              const std::vector<QuadElem>& points, long M, int first);
Series<ModRing> build_Fstar_padic(const QuadField& k, const ModRing& ring,
                                  const PadicEmbedding& emb, const CharPair& pair,
                                  const QuadElem& tau1, const QuadElem& tau2, long M, int first);

// z(m; xi, I, tau1, tau2) at a non-positive integer m via Delta^{-m} at X = 0.
// The sqrt(d)-component of the result must vanish; the value in Q(mu_f) is
// returned.  Tp_mode switches to the T_p-modified series (requires p).
CycElem exact_z_at_m(const QuadField& k, const CycQuadRing& ring, const CharPair& pair,
                     const QuadElem& tau1, const QuadElem& tau2, long m, bool Tp_mode,
                     const Int& p = Int(0), int first = 0);

// z_{T_p,p}(1; xi, I, tau1, tau2) mod p^N via Eq. (3I.2)
Int padic_z_at_1(const QuadField& k, const CharPair& pair, const QuadElem& tau1,
                 const QuadElem& tau2, const std::vector<QuadElem>& points,
                 const PrecisionPlan& plan, const PadicEmbedding& emb, int first,
                 const CnTable& cn);

// Z_{T_p,p}(1; w) mod p^N over the whole fan (Eq. (3J) + fan additivity)
Int padic_Z_at_1(const QuadField& k, const CharPair& pair, const ConeFan& fan,
                 const PrecisionPlan& plan, const PadicEmbedding& emb);

// image of an element of Q(mu_f) in Z/p^W under zeta_f -> emb.zeta
Int embed_cyclotomic(const PadicEmbedding& emb, const CycField& F, const CycElem& x,
                     const Int& modulus);

} // namespace pstark
