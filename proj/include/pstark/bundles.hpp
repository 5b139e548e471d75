#pragma once

#include <optional>
#include <string>

#include "pstark/phi.hpp"
#include "pstark/verify.hpp"

namespace pstark {

// One expected coefficient group: a digit string attached to a set of group
// elements (exponent vectors), mirroring the published table layout.
struct ExpectedCoeff {
    std::string digits;
    std::vector<std::vector<long>> elements;
};

struct BundlePrime {
    Int p;
    long digits = 0;
    std::vector<ExpectedCoeff> coeffs;
};

struct ExampleBundle {
    int id = 0;
    Int d;
    std::vector<std::vector<Int>> f_factors; // {p, index (-1: pO), exponent}
    std::string f_label;
    long h_k = 0;
    std::vector<long> group_orders; // published structure of G
    bool gamma_symmetric = false;   // Gamma-stable data: coefficients pair up
    std::vector<BundlePrime> primes;
    // optional ray-class injection block (validated generator/order data)
    bool has_injection = false;
    std::vector<long> inj_orders;
    std::vector<std::string> inj_generators; // JSON ideal literals

    // verification data (Tables 2-5), optional pieces
    bool has_verification = false;
    std::vector<long> ranks; // per canonical rational class
    std::vector<Int> e_tilde_gt2; // expected idempotent (validated)
    std::vector<std::string> rgamma, phi0;       // decimal strings per element index
    std::vector<std::string> rgamma_hi, phi0_hi; // higher precision, when published
    Int b = 1;
    bool prime_power_f = false;
    std::vector<std::string> expected_A; // rationals per element index
    Int expected_df = 0;
    std::vector<Int> expected_df_sigma;
    std::string expected_index;
    bool has_units = false;
    ZMat sigma_action;
    std::vector<std::vector<std::vector<Rat>>> v_vectors;
    std::vector<std::pair<std::vector<Rat>, std::vector<Rat>>> gamma_terms;
    bool df_assumed = false; // d_f not derivable from published data
    bool table_data_suspect = false; // published row is internally inconsistent
    bool printed_A_suspect = false;  // published A contradicts the published numerics
};

ExampleBundle load_bundle(const std::string& path);
// data directory resolution: explicit, $PSTARK_DATA, or the source tree
std::string bundle_path(int id, const std::string& data_dir);

QuadIdeal bundle_modulus(const QuadField& k, const ExampleBundle& b);
QuadIdeal ideal_from_json_literal(const QuadField& k, const std::string& json_text);

// digit-string match under some automorphism of G; reports which
bool phi_matches_expected(const PhiResult& phi, const BundlePrime& expect,
                          std::string* matched_auto = nullptr);

VerifyInput verify_input_from_bundle(const ExampleBundle& b, bool high_precision);

} // namespace pstark
