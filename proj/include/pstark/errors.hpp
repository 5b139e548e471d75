#pragma once

#include <stdexcept>
#include <string>

namespace pstark {

// Error codes used across the library.  Each maps to one failure mode of a
// public operation; the CLI turns the code into machine-readable JSON.
enum class errc {
    non_split_prime,
    bad_f,
    zero_ideal,
    not_coprime,
    not_in_ideal,
    trivial_modulus,
    kernel_obstruction,
    kernel_generator,
    dependent_generators,
    non_unit_divisor,
    precision_exhausted,
    insufficient_degree,
    inconsistent_groups,
    hypothesis_violation,
    singular_regulator,
    reconstruction_failed,
    rank_mismatch,
    inconsistent_dimensions,
    negative_valuation,
    internal,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

inline void require(bool cond, errc code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace pstark
