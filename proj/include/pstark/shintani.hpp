#pragma once

#include "pstark/charpairs.hpp"

namespace pstark {

// The continued-fraction fan for C(rho_0, eps*rho_0): consecutive generators
// rho_0..rho_L with per-cone fundamental-domain points, all in I \ ker(xi).
struct ConeFan {
    std::vector<QuadElem> rho;
    std::vector<std::vector<QuadElem>> points; // points[t-1] = I cap P(rho_{t-1}, rho_t)
    std::vector<long> partial_quotients;       // b_n over the chosen period
    QuadElem eps;
    int first = 0; // 0 if iota_1 is the sqrt(d) > 0 embedding, 1 if swapped
    long L() const { return (long)rho.size() - 1; }
};

// A pair (x, y) in I, totally positive, with Zx + Zy = I, iota_first(x) >
// iota_first(y) and positively oriented determinant.
std::pair<QuadElem, QuadElem> initial_basis_pair(const QuadField& k, const QuadIdeal& I,
                                                 int first);

// All points of I cap P(tau1, tau2); exactly |I : Z tau1 + Z tau2| of them.
std::vector<QuadElem> enumerate_parallelogram(const QuadField& k, const QuadIdeal& I,
                                              const QuadElem& tau1, const QuadElem& tau2);

ConeFan continued_fraction_fan(const QuadField& k, const CharPair& pair, const QuadElem& eps);

} // namespace pstark
