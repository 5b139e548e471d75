#include "pstark/quadfield.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pstark {

std::string QuadElem::str() const {
    std::ostringstream os;
    os << a.get_str();
    if (b != 0) os << (b > 0 ? "+" : "") << b.get_str() << "*w";
    return os.str();
}

std::string QuadIdeal::str() const {
    std::ostringstream os;
    os << scale.get_str() << "*[" << a << ", " << b << "+" << c << "w]";
    return os.str();
}

// sign of A + C*sqrt(d), exact
static int sign_quad(const Rat& A, const Rat& C, const Int& d) {
    int sa = sgn(A), sc = sgn(C);
    if (sc == 0) return sa;
    if (sa == 0) return sc;
    if (sa == sc) return sa;
    Rat lhs = A * A, rhs = C * C * Rat(d);
    require(lhs != rhs, errc::internal, "sqrt(d) rational?");
    return lhs > rhs ? sa : sc;
}

// floor((P + Q*sqrt(d))/R) with R > 0, exact
static Int floor_quad(const Int& P, const Int& Q, const Int& R, const Int& d) {
    require(R > 0, errc::internal, "floor_quad: R <= 0");
    // estimate with enough float precision, then fix exactly
    size_t bits = std::max({mpz_sizeinbase(P.get_mpz_t(), 2), mpz_sizeinbase(Q.get_mpz_t(), 2),
                            mpz_sizeinbase(R.get_mpz_t(), 2)}) +
                  mpz_sizeinbase(d.get_mpz_t(), 2) + 96;
    mpf_class fP(P, bits), fQ(Q, bits), fR(R, bits), fd(d, bits), v(0, bits);
    v = (fP + fQ * sqrt(fd)) / fR;
    mpf_class fl(0, bits);
    mpf_floor(fl.get_mpf_t(), v.get_mpf_t());
    Int n;
    mpz_set_f(n.get_mpz_t(), fl.get_mpf_t());

    auto cmp = [&](const Int& m) { // sign of m - value
        Int T = m * R - P;
        return sign_quad(Rat(T), Rat(-Q), d);
    };
    while (cmp(n + 1) <= 0) ++n;
    while (cmp(n) > 0) --n;
    return n;
}

QuadField::QuadField(const Int& d) : d_(d) {
    require(d > 4, errc::internal, "discriminant must be > 4");
    Int r = fmod(d, 4);
    require(r == 0 || r == 1, errc::internal, "discriminant must be 0 or 1 mod 4");
    Int core = r == 0 ? Int(d / 4) : d;
    for (auto& [p, e] : factor(core))
        require(e == 1, errc::internal, "discriminant not fundamental");
    if (r == 0) {
        Int m4 = fmod(Int(d / 4), 4);
        require(m4 == 2 || m4 == 3, errc::internal, "discriminant not fundamental");
    }
    sqrt_floor_ = isqrt(d);
    build_principal_cycle();
}

QuadElem QuadField::mul(const QuadElem& x, const QuadElem& y) const {
    // omega^2 = d*omega - (d^2-d)/4
    Rat nw(omega_norm());
    Rat bb = x.b * y.b;
    return {x.a * y.a - bb * nw, x.a * y.b + x.b * y.a + bb * Rat(d_)};
}

Rat QuadField::norm(const QuadElem& x) const {
    return x.a * x.a + x.a * x.b * Rat(d_) + x.b * x.b * Rat(omega_norm());
}

QuadElem QuadField::inv(const QuadElem& x) const {
    Rat n = norm(x);
    require(n != 0, errc::internal, "inverse of zero");
    QuadElem c = conj(x);
    return {c.a / n, c.b / n};
}

QuadElem QuadField::div(const QuadElem& x, const QuadElem& y) const { return mul(x, inv(y)); }

QuadElem QuadField::pow(QuadElem x, long e) const {
    if (e < 0) { x = inv(x); e = -e; }
    QuadElem r = QuadElem::integer(1);
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

int QuadField::sign_at(const QuadElem& x, int which) const {
    auto [A, B] = ab_coords(x);
    return sign_quad(A, which == 0 ? B : Rat(-B), d_);
}

Int QuadField::floor_at(const QuadElem& x, int which) const {
    auto [A, B] = ab_coords(x);
    if (which == 1) B = -B;
    Int R = lcm(Int(A.get_den()), Int(B.get_den()));
    Int P = Int(A.get_num()) * (R / A.get_den());
    Int Q = Int(B.get_num()) * (R / B.get_den());
    return floor_quad(P, Q, R, d_);
}

Int QuadField::ceil_at(const QuadElem& x, int which) const {
    auto [A, B] = ab_coords(x);
    if (which == 1) B = -B;
    Int R = lcm(Int(A.get_den()), Int(B.get_den()));
    Int P = Int(A.get_num()) * (R / A.get_den());
    Int Q = Int(B.get_num()) * (R / B.get_den());
    return -floor_quad(Int(-P), Int(-Q), R, d_);
}

std::string QuadField::embed_real(const QuadElem& x, int which, int digits) const {
    auto [A, B] = ab_coords(x);
    if (which == 1) B = -B;
    Int ten = pow_int(10, digits);
    // n = floor(v*10^k + 1/2), v = (P + Q sqrt d)/R
    Int R = lcm(Int(A.get_den()), Int(B.get_den()));
    Int P = Int(A.get_num()) * (R / A.get_den());
    Int Q = Int(B.get_num()) * (R / B.get_den());
    Int n = floor_quad(2 * P * ten + R, 2 * Q * ten, 2 * R, d_);
    bool neg = n < 0;
    Int m = abs(n);
    std::string ds = m.get_str();
    if ((int)ds.size() <= digits) ds.insert(0, digits + 1 - ds.size(), '0');
    std::string out = ds.substr(0, ds.size() - digits) + "." + ds.substr(ds.size() - digits);
    if (neg) out.insert(0, "-");
    return out;
}

// ---- ideals ---------------------------------------------------------------

QuadIdeal QuadField::ideal_from_generators(const std::vector<QuadElem>& gens) const {
    Int den(1);
    for (auto& g : gens) {
        den = lcm(den, Int(g.a.get_den()));
        den = lcm(den, Int(g.b.get_den()));
    }
    // rows: omega coordinate first, then the rational coordinate; this makes
    // hnf_cols produce the classical [a, b + c*omega] shape
    ZMat m(2, gens.size());
    for (size_t j = 0; j < gens.size(); ++j) {
        m(0, j) = Int(gens[j].b * Rat(den));
        m(1, j) = Int(gens[j].a * Rat(den));
    }
    ZMat h = hnf_cols(m);
    require(h.cols == 2, errc::zero_ideal, "generators do not span a full lattice");
    Int c = h(0, 0), b = h(1, 0), a = h(1, 1);
    require(c > 0 && a > 0 && h(0, 1) == 0, errc::internal, "bad ideal hnf");
    Int g = gcd(gcd(a, b), c);
    QuadIdeal I{Rat(g, den), a / g, b / g, c / g};
    I.scale.canonicalize();
    // keep 0 <= b < a after content removal
    I.b = fmod(I.b, I.a);
    return I;
}

QuadIdeal QuadField::principal_ideal(const QuadElem& x) const {
    require(!x.is_zero(), errc::zero_ideal, "principal ideal of zero");
    return ideal_from_generators({x, mul(x, QuadElem{Rat(0), Rat(1)})});
}

QuadIdeal QuadField::mul(const QuadIdeal& I, const QuadIdeal& J) const {
    auto g1 = I.gen1(), g2 = I.gen2(), h1 = J.gen1(), h2 = J.gen2();
    return ideal_from_generators({mul(g1, h1), mul(g1, h2), mul(g2, h1), mul(g2, h2)});
}

QuadIdeal QuadField::mul(const QuadIdeal& I, const QuadElem& x) const {
    return ideal_from_generators({mul(I.gen1(), x), mul(I.gen2(), x)});
}

QuadIdeal QuadField::conj(const QuadIdeal& I) const {
    return ideal_from_generators({conj(I.gen1()), conj(I.gen2())});
}

QuadIdeal QuadField::inv(const QuadIdeal& I) const {
    Rat n = norm(I);
    require(n != 0, errc::zero_ideal, "inverse of zero ideal");
    QuadIdeal c = conj(I);
    c.scale /= n;
    return c;
}

QuadIdeal QuadField::pow(const QuadIdeal& I, long e) const {
    if (e < 0) return inv(pow(I, -e));
    QuadIdeal r = ideal_O();
    QuadIdeal base = I;
    unsigned long u = e;
    while (u) {
        if (u & 1) r = mul(r, base);
        base = mul(base, base);
        u >>= 1;
    }
    return r;
}

std::pair<Rat, Rat> QuadField::coords_in(const QuadIdeal& I, const QuadElem& x) const {
    Rat beta = x.b / (I.scale * Rat(I.c));
    Rat alpha = (x.a / I.scale - beta * Rat(I.b)) / Rat(I.a);
    return {alpha, beta};
}

bool QuadField::contains(const QuadIdeal& I, const QuadElem& x) const {
    if (x.is_zero()) return true;
    auto [al, be] = coords_in(I, x);
    return al.get_den() == 1 && be.get_den() == 1;
}

bool QuadField::subset(const QuadIdeal& I, const QuadIdeal& J) const {
    return contains(J, I.gen1()) && contains(J, I.gen2());
}

bool QuadField::omega_closed(const QuadIdeal& I) const {
    QuadElem w{Rat(0), Rat(1)};
    return contains(I, mul(I.gen1(), w)) && contains(I, mul(I.gen2(), w));
}

Rat QuadField::index_of_element(const QuadIdeal& I, const QuadElem& x) const {
    require(!x.is_zero(), errc::zero_ideal, "index of zero element");
    Rat n = norm(x);
    if (n < 0) n = -n;
    return n / norm(I);
}

std::vector<QuadIdeal> QuadField::primes_above(const Int& p) const {
    require(is_prime(p), errc::internal, "primes_above: not a prime");
    std::vector<QuadIdeal> out;
    int k = kronecker(d_, p);
    QuadElem w{Rat(0), Rat(1)};
    auto make = [&](const Int& root) {
        return ideal_from_generators({QuadElem::integer(Rat(p)), w - QuadElem::integer(Rat(root))});
    };
    if (k == -1) {
        out.push_back(principal_ideal(QuadElem::integer(Rat(p))));
    } else if (p == 2) {
        // brute roots of x^2 - d x + (d^2-d)/4 mod 2
        for (Int r(0); r <= 1; ++r)
            if (fmod(Int(r * r - d_ * r + omega_norm()), p) == 0) out.push_back(make(r));
        require(!out.empty(), errc::internal, "no prime above 2");
        if (k == 0) out.resize(1);
    } else if (k == 0) {
        Int r = fmod(Int(d_ * inv_mod(2, p)), p);
        out.push_back(make(r));
    } else {
        Int s = sqrt_mod_prime(d_, p);
        Int inv2 = inv_mod(2, p);
        Int r1 = fmod(Int((d_ + s) * inv2), p), r2 = fmod(Int((d_ - s) * inv2), p);
        out.push_back(make(r1));
        out.push_back(make(r2));
    }
    std::sort(out.begin(), out.end(), [](const QuadIdeal& x, const QuadIdeal& y) {
        return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    });
    return out;
}

long QuadField::ord_at(const QuadIdeal& I, const QuadIdeal& prime) const {
    // make integral first
    Int den = Int(I.scale.get_den());
    QuadIdeal J = I;
    J.scale *= Rat(den);
    long shift = 0;
    if (den != 1) {
        // ord_prime(den) as a rational integer
        Int p = prime.a; // residual characteristic: gen1 = a = p or p^2? a is p for split/ram, p for inert? inert: (p): a = p, c = p
        // recover p: norm of prime is p or p^2 with p prime
        Rat np = norm(prime);
        Int pn = Int(np.get_num());
        Int pp = is_square(pn) && !is_prime(pn) ? isqrt(pn) : pn;
        long e = kronecker(d_, pp) == 0 ? 2 : 1;
        shift = e * valuation(den, pp);
    }
    long v = 0;
    QuadIdeal pinv = inv(prime);
    while (subset(J, prime)) {
        J = mul(J, pinv);
        ++v;
        require(v < 4096, errc::internal, "ord_at runaway");
    }
    return v - shift;
}

bool QuadField::coprime_to(const QuadIdeal& I, const Int& n) const {
    for (auto& [p, e] : factor(n)) {
        (void)e;
        for (auto& q : primes_above(p))
            if (ord_at(I, q) != 0) return false;
    }
    return true;
}

std::vector<QuadIdeal> QuadField::prime_ideals_upto(const Int& limit) const {
    std::vector<std::pair<Rat, QuadIdeal>> tmp;
    for (long p : primes_below(limit.get_si() + 1)) {
        int k = kronecker(d_, Int(p));
        if (k == -1 && Int(p) * p > limit) continue;
        for (auto& q : primes_above(Int(p))) tmp.push_back({norm(q), q});
    }
    std::sort(tmp.begin(), tmp.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return std::tie(x.second.a, x.second.b, x.second.c) <
               std::tie(y.second.a, y.second.b, y.second.c);
    });
    std::vector<QuadIdeal> out;
    for (auto& [n, q] : tmp) out.push_back(q);
    return out;
}

// ---- reduction ------------------------------------------------------------

QuadIdeal QuadField::ideal_ab(const Int& a, const Int& b) const {
    QuadIdeal I{Rat(1), a, fmod(b, a), 1};
    return I;
}

std::pair<Int, Int> QuadField::normalize_ab(const Int& a, const Int& b) const {
    // choose b' = b mod a with b' + conj(omega) in (-a, 0)
    Int t = floor_quad(Int(-d_), Int(1), Int(2), d_); // floor(-conj(omega))
    Int bp = t - fmod(Int(t - b), a);
    return {a, bp};
}

std::pair<std::pair<Int, Int>, QuadElem> QuadField::reduce_step(const Int& a, const Int& b) const {
    QuadElem psi{Rat(b), Rat(1)};
    Rat npsi = norm(psi);
    Int n = Int(npsi.get_num());
    require(npsi.get_den() == 1 && fmod(n, a) == 0, errc::internal, "reduce_step: invalid state");
    Int cp = abs(n / a);
    require(cp > 0, errc::internal, "reduce_step: zero norm");
    auto next = normalize_ab(cp, Int(-b - d_));
    QuadElem mu = div(QuadElem::integer(Rat(cp)), psi);
    return {next, mu};
}

void QuadField::build_principal_cycle() {
    auto start = normalize_ab(Int(1), Int(0));
    auto state = start;
    QuadElem g = QuadElem::integer(1);
    for (long steps = 0;; ++steps) {
        require(steps < 2000000, errc::internal, "principal cycle runaway");
        principal_cycle_.insert({state, g});
        auto [next, mu] = reduce_step(state.first, state.second);
        g = mul(g, mu);
        state = next;
        if (state == start) break;
    }
    // g now generates the stabilizer: a unit
    Rat n = norm(g);
    require(n == 1 || n == -1, errc::internal, "cycle unit has bad norm");
    for (QuadElem cand : {g, -g, inv(g), QuadElem(-inv(g))}) {
        if (sign_at(cand - QuadElem::integer(1), 0) > 0) {
            eps0_ = cand;
            eps0_norm_ = (int)norm(cand).get_num().get_si();
            return;
        }
    }
    fail(errc::internal, "no unit > 1 found");
}

std::optional<QuadElem> QuadField::principal_generator(const QuadIdeal& I) const {
    require(I.is_integral() && I.scale == 1, errc::internal,
            "principal_generator expects a primitive integral ideal");
    require(omega_closed(I), errc::internal, "principal_generator: not an ideal");
    require(I.c == 1, errc::internal, "primitive ideal should have c = 1");
    auto state = normalize_ab(I.a, I.b);
    QuadElem w = QuadElem::integer(1);
    std::set<std::pair<Int, Int>> seen;
    for (;;) {
        auto it = principal_cycle_.find(state);
        if (it != principal_cycle_.end()) {
            QuadElem gen = div(it->second, w);
            QuadIdeal check = principal_ideal(gen);
            require(check == I, errc::internal, "principal generator verification failed");
            return gen;
        }
        if (!seen.insert(state).second) return std::nullopt;
        auto [next, mu] = reduce_step(state.first, state.second);
        w = mul(w, mu);
        state = next;
    }
}

std::optional<QuadElem> QuadField::principal_generator_frac(const QuadIdeal& I) const {
    QuadIdeal J{Rat(1), I.a, I.b, I.c};
    if (J.c != 1) {
        // c > 1 with gcd(a,b,c)=1 cannot be omega-closed; not an ideal
        require(omega_closed(I), errc::zero_ideal, "not an O-ideal");
        return std::nullopt;
    }
    auto g = principal_generator(J);
    if (!g) return std::nullopt;
    QuadElem out = *g;
    out.a *= I.scale;
    out.b *= I.scale;
    return out;
}

long QuadField::ray_unit_exponent(const QuadIdeal& f) const {
    require(f.is_integral(), errc::internal, "ray_unit: modulus must be integral");
    Int bound = 8 * Int(norm(f).get_num()) + 8;
    QuadElem u = QuadElem::integer(1);
    for (long n = 1; Int(n) <= bound; ++n) {
        u = mul(u, eps0_);
        if (norm(u) != 1) continue;
        if (contains(f, u - QuadElem::integer(1))) {
            require(totally_positive(u), errc::internal, "ray unit not totally positive");
            return n;
        }
    }
    fail(errc::internal, "ray unit exponent not found");
}

QuadElem QuadField::ray_unit(const QuadIdeal& f) const {
    return pow(eps0_, ray_unit_exponent(f));
}

// ---- residues --------------------------------------------------------------

std::pair<Int, Int> QuadField::residue(const QuadIdeal& f, const QuadElem& x) const {
    require(f.is_integral(), errc::internal, "residue: modulus must be integral");
    require(x.a.get_den() == 1 && x.b.get_den() == 1, errc::internal, "residue: non-integral element");
    Int s = Int(f.scale.get_num());
    Int A = s * f.a, B = s * f.b, C = s * f.c;
    Int u = Int(x.a.get_num()), v = Int(x.b.get_num());
    Int vr = fmod(v, C);
    Int k = (v - vr) / C;
    Int ur = fmod(Int(u - k * B), A);
    return {ur, vr};
}

bool QuadField::is_one_mod_star(const QuadIdeal& f, const QuadElem& x) const {
    require(f.is_integral(), errc::internal, "modulus must be integral");
    Int m = lcm(Int(x.a.get_den()), Int(x.b.get_den()));
    QuadElem U{x.a * Rat(m), x.b * Rat(m)};
    QuadElem diff = U - QuadElem::integer(Rat(m));
    if (diff.is_zero()) return true;
    // prime-wise: (U - m) must lie in q^(e + ord_q(m)) for q^e || f
    Rat nf = norm(f);
    for (auto& [p, e0] : factor(Int(nf.get_num()))) {
        (void)e0;
        for (auto& q : primes_above(p)) {
            long e = ord_at(f, q);
            if (e == 0) continue;
            long eq = kronecker(d_, p) == 0 ? 2 : 1;
            long s = eq * valuation(m, p);
            if (!contains(pow(q, e + s), diff)) return false;
        }
    }
    return true;
}

// ---- p-adic embeddings ------------------------------------------------------

PadicEmbedding QuadField::make_padic_embedding(const Int& p, long f, int root_choice,
                                               int zeta_choice, long W) const {
    require(p > 2 && is_prime(p), errc::non_split_prime, "p must be an odd prime");
    require(kronecker(d_, p) == 1, errc::non_split_prime,
            "d is not a nonzero quadratic residue mod " + p.get_str());
    require(f >= 1 && (p - 1) % f == 0, errc::bad_f, "f must divide p-1");
    require(W >= 1 && (root_choice == 0 || root_choice == 1), errc::internal, "bad parameters");

    PadicEmbedding emb;
    emb.p = p;
    emb.W = W;
    emb.modulus = pow_int(p, W);
    emb.f = f;
    emb.root_choice = root_choice;
    emb.zeta_choice = zeta_choice;

    // Hensel lift of sqrt(d)
    Int r = sqrt_mod_prime(d_, p);
    if (root_choice == 1) r = p - r;
    Int mod = p;
    while (mod < emb.modulus) {
        mod = mod * mod;
        if (mod > emb.modulus) mod = emb.modulus;
        r = fmod(Int(r - (r * r - d_) * inv_mod(2 * r, mod)), mod);
    }
    r = fmod(r, emb.modulus);
    require(fmod(Int(r * r - d_), emb.modulus) == 0, errc::internal, "root lift failed");
    emb.root = r;

    if (f == 1) {
        emb.zeta = 1;
        require(zeta_choice == 0, errc::bad_f, "f = 1 has a single root of unity");
        return emb;
    }
    // primitive f-th roots mod p, ascending
    std::vector<Int> prim;
    auto fac = factor(Int(f));
    for (Int x(2); x < p; ++x) {
        if (pow_mod(x, Int(f), p) != 1) continue;
        bool primitive = true;
        for (auto& [ell, e] : fac) {
            (void)e;
            if (pow_mod(x, Int(f / ell.get_si()), p) == 1) { primitive = false; break; }
        }
        if (primitive) prim.push_back(x);
    }
    require((unsigned long)prim.size() == euler_phi(f), errc::internal, "primitive root count");
    require(zeta_choice >= 0 && (size_t)zeta_choice < prim.size(), errc::bad_f, "zeta_choice out of range");
    Int z = prim[zeta_choice];
    mod = p;
    while (mod < emb.modulus) {
        mod = mod * mod;
        if (mod > emb.modulus) mod = emb.modulus;
        Int deriv = fmod(Int(f * pow_mod(z, Int(f - 1), mod)), mod);
        z = fmod(Int(z - (pow_mod(z, Int(f), mod) - 1) * inv_mod(deriv, mod)), mod);
    }
    z = fmod(z, emb.modulus);
    require(pow_mod(z, Int(f), emb.modulus) == 1, errc::internal, "zeta lift failed");
    emb.zeta = z;
    return emb;
}

Int QuadField::embed_padic(const PadicEmbedding& emb, const QuadElem& x, int which) const {
    // iota_p(x) = a + b*(d + s*root)/2 with s = +1 (which 0) or -1 (which 1)
    Int root = which == 0 ? emb.root : Int(emb.modulus - emb.root);
    const Int& M = emb.modulus;
    Int num = fmod(Int(x.a.get_num()), M);
    Int val = num * inv_mod(Int(x.a.get_den()), M);
    Int wimg = fmod(Int((d_ + root) * inv_mod(2, M)), M);
    val += fmod(Int(x.b.get_num()), M) * inv_mod(Int(x.b.get_den()), M) % M * wimg;
    return fmod(val, M);
}

} // namespace pstark
