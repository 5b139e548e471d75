#include "pstark/charpairs.hpp"

#include <numeric>

namespace pstark {

long modulus_integer(const QuadField& k, const QuadIdeal& f) {
    require(f.is_integral(), errc::internal, "modulus must be integral");
    Rat fi = Rat(f.a) * f.scale; // gen1 = a*scale is the smallest positive rational integer in f
    require(fi.get_den() == 1, errc::internal, "f cap Z not integral?");
    return (long)fi.get_num().get_si();
}

CharPair base_pair(const QuadField& k, const QuadIdeal& f) {
    require(f.is_integral() && !(f == k.ideal_O()), errc::trivial_modulus,
            "base pair needs a nontrivial integral modulus");
    CharPair pair;
    pair.f = f;
    pair.f_int = modulus_integer(k, f);
    pair.acting = k.ideal_O();
    pair.I = k.mul(k.inv(f), k.inv(k.different()));
    return pair;
}

CharPair act(const QuadField& k, const CharPair& pair, const QuadIdeal& a) {
    require(a.is_integral(), errc::not_coprime, "acting ideal must be integral");
    CharPair out = pair;
    out.acting = k.mul(pair.acting, a);
    out.I = k.mul(pair.I, a);
    return out;
}

CharPair twist_pair(const CharPair& pair, long t) {
    require(std::gcd(((t % pair.f_int) + pair.f_int) % pair.f_int, pair.f_int) == 1,
            errc::internal, "twist must be coprime to f");
    CharPair out = pair;
    out.twist = (pair.twist * t) % pair.f_int;
    return out;
}

CharValue evaluate(const QuadField& k, const CharPair& pair, const QuadElem& x) {
    require(k.contains(pair.I, x), errc::not_in_ideal, "element not in the pair's ideal");
    Rat t = Rat(pair.f_int) * k.trace(x);
    require(t.get_den() == 1, errc::internal, "character annihilator violated");
    long tt = (long)fmod(Int(t.get_num() * pair.twist), Int(pair.f_int)).get_si();
    return {tt, pair.f_int};
}

bool kernel_test(const QuadField& k, const CharPair& pair, const QuadElem& x) {
    return evaluate(k, pair, x).is_one();
}

} // namespace pstark
