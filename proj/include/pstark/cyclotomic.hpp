#pragma once

#include <vector>

#include "pstark/numutil.hpp"

namespace pstark {

// Elements of Q(zeta_n) as polynomials in zeta of degree < phi(n), reduced
// modulo the n-th cyclotomic polynomial.
struct CycElem {
    std::vector<Rat> c; // length phi(n)
    bool operator==(const CycElem& o) const { return c == o.c; }
    bool is_zero() const {
        for (auto& x : c)
            if (x != 0) return false;
        return true;
    }
};

class CycField {
  public:
    explicit CycField(long n);

    long n() const { return n_; }
    long degree() const { return deg_; }

    CycElem zero() const { return {std::vector<Rat>(deg_, Rat(0))}; }
    CycElem from_rat(const Rat& r) const;
    CycElem zeta_pow(long k) const; // zeta^k reduced
    CycElem add(const CycElem& x, const CycElem& y) const;
    CycElem sub(const CycElem& x, const CycElem& y) const;
    CycElem neg(const CycElem& x) const;
    CycElem mul(const CycElem& x, const CycElem& y) const;
    CycElem inv(const CycElem& x) const; // throws non_unit_divisor on zero
    // Galois map zeta -> zeta^t, gcd(t, n) = 1
    CycElem galois(const CycElem& x, long t) const;
    // trace to Q; throws if the result fails to be rational (cannot happen)
    Rat trace(const CycElem& x) const;
    bool is_rational(const CycElem& x) const;
    Rat rational_part(const CycElem& x) const; // requires is_rational

    const std::vector<Int>& modulus_poly() const { return phi_; }

  private:
    long n_, deg_;
    std::vector<Int> phi_;               // cyclotomic polynomial, monic, degree deg_
    std::vector<std::vector<Rat>> pows_; // zeta^k reduced, k < 2*deg
};

// coefficients of the n-th cyclotomic polynomial (ascending degree, monic)
std::vector<Int> cyclotomic_poly(long n);

} // namespace pstark
