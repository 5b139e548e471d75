#pragma once

#include "pstark/rayclass.hpp"
#include "pstark/zeta.hpp"

namespace pstark {

struct PhiOptions {
    int root_choice = 0;
    int zeta_choice = 0;
    int threads = 1;
};

// Phi_{f,T_p,p}(1) = sum_c Z_{T_p,p}(1; c w^0) sigma_c^{-1} in (Z/p^N)[G],
// G = Cl_f(k).  coef[i] is the coefficient of the group element with index i.
struct PhiResult {
    std::vector<long> orders;
    Int p;
    long N = 0;
    Int modulus;
    long f_int = 0;
    int root_choice = 0, zeta_choice = 0;
    std::vector<Int> coef;
};

PhiResult compute_phi(const QuadField& k, const QuadIdeal& f, const Int& p, long N,
                      const PhiOptions& opt = {});

// base-p digit string "0.d0 d1 ... d(N-1)_p" with letters beyond 9
std::string format_digits(const Int& x, const Int& p, long N);

// coefficient(g) == coefficient(g^{-1}) for every g
bool galois_symmetric(const PhiResult& phi);

// paper-style display: grouped equal coefficients against powers of the
// generator(s)
std::string phi_to_string(const PhiResult& phi);

// all digit strings, indexed like coef
std::vector<std::string> phi_digit_strings(const PhiResult& phi);

} // namespace pstark
