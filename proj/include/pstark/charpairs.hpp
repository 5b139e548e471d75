#pragma once

#include "pstark/quadfield.hpp"

namespace pstark {

// xi(x) = exp(2 pi i Tr(x)) restricted to the fractional ideal I = a * f^-1 * D^-1.
// Values are f-th roots of unity, recorded by their exponent.
struct CharValue {
    long t = 0; // exponent in Z/f
    long f = 1;
    bool is_one() const { return t % f == 0; }
};

struct CharPair {
    QuadIdeal I;
    QuadIdeal f;
    long f_int = 0;   // positive generator of f cap Z
    QuadIdeal acting; // the integral ideal a with I = a f^-1 D^-1
    long twist = 1;   // evaluate xi^twist; used for Galois-composed characters
};

// the pair with xi replaced by xi^t (t coprime to f)
CharPair twist_pair(const CharPair& pair, long t);

// positive generator of f cap Z for an integral ideal f
long modulus_integer(const QuadField& k, const QuadIdeal& f);

// (xi^0_f, f^-1 D^-1); TrivialModulus if f = O
CharPair base_pair(const QuadField& k, const QuadIdeal& f);

// the pair (xi restricted to aI, aI) for an integral ideal a coprime to f
CharPair act(const QuadField& k, const CharPair& pair, const QuadIdeal& a);

CharValue evaluate(const QuadField& k, const CharPair& pair, const QuadElem& x);
bool kernel_test(const QuadField& k, const CharPair& pair, const QuadElem& x);

} // namespace pstark
