#include "pstark/verify.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pstark {

CharacterTable::CharacterTable(const std::vector<long>& ords)
    : orders(ords), cyc(1) {
    g = 1;
    exponent = 1;
    for (long o : orders) {
        require(o >= 2, errc::internal, "invariant factors must be >= 2");
        g *= (unsigned long)o;
        exponent = std::lcm(exponent, o);
    }
    if (orders.empty()) { g = 1; exponent = 1; }
    cyc = CycField(exponent);
    // Galois orbits: t ~ s*t (componentwise, s coprime to exponent)
    std::vector<bool> seen(g, false);
    for (unsigned long t = 0; t < g; ++t) {
        if (seen[t]) continue;
        std::vector<unsigned long> orbit;
        auto te = unrank_mixed(t, orders);
        for (long s = 1; s <= exponent; ++s) {
            if (std::gcd(s, exponent) != 1) continue;
            std::vector<long> se(te);
            for (size_t i = 0; i < se.size(); ++i) se[i] = (se[i] * s) % orders[i];
            unsigned long idx = rank_mixed(se, orders);
            if (!seen[idx]) {
                seen[idx] = true;
                orbit.push_back(idx);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        classes.push_back(orbit);
    }
    std::sort(classes.begin(), classes.end());
    for (auto& cl : classes) {
        // common order of the characters in the class
        auto te = unrank_mixed(cl[0], orders);
        long d = 1;
        for (size_t i = 0; i < te.size(); ++i)
            if (te[i] != 0) d = std::lcm(d, orders[i] / std::gcd(orders[i], te[i]));
        class_order.push_back(d);
    }
}

long CharacterTable::chi_exponent(unsigned long t, unsigned long h) const {
    auto te = unrank_mixed(t, orders), he = unrank_mixed(h, orders);
    long e = 0;
    for (size_t i = 0; i < orders.size(); ++i)
        e = (e + te[i] * he[i] % orders[i] * (exponent / orders[i])) % exponent;
    return e;
}

CycElem CharacterTable::chi(unsigned long t, unsigned long h) const {
    return cyc.zeta_pow(chi_exponent(t, h));
}

bool CharacterTable::orthogonality_check() const {
    for (unsigned long t = 0; t < g; ++t)
        for (unsigned long s = 0; s < g; ++s) {
            CycElem sum = cyc.zero();
            for (unsigned long h = 0; h < g; ++h)
                sum = cyc.add(sum, cyc.zeta_pow(chi_exponent(t, h) - chi_exponent(s, h)));
            Rat expect = t == s ? Rat((long)g) : Rat(0);
            if (!cyc.is_rational(sum) || cyc.rational_part(sum) != expect) return false;
        }
    return true;
}

RankData make_rank_data(const CharacterTable& T, const std::vector<long>& ranks) {
    require(ranks.size() == T.classes.size(), errc::inconsistent_dimensions,
            "one rank per rational class");
    for (long r : ranks) require(r >= 2, errc::internal, "r(S,chi) >= 2 for quadratic k");
    RankData out;
    out.r = ranks;
    // e~_{S,>2} = sum over classes with r > 2 of g * e_i; the coefficient of h
    // is the (rational) orbit sum of chi(h^{-1})
    out.e_tilde_gt2.assign(T.g, Int(0));
    for (unsigned long h = 0; h < T.g; ++h) {
        CycElem sum = T.cyc.zero();
        for (size_t i = 0; i < T.classes.size(); ++i) {
            if (ranks[i] <= 2) continue;
            auto he = unrank_mixed(h, T.orders);
            std::vector<long> inv(he);
            for (size_t j = 0; j < inv.size(); ++j) inv[j] = (T.orders[j] - inv[j]) % T.orders[j];
            unsigned long hinv = rank_mixed(inv, T.orders);
            for (unsigned long t : T.classes[i]) sum = T.cyc.add(sum, T.chi(t, hinv));
        }
        require(T.cyc.is_rational(sum), errc::internal, "idempotent coefficient not rational");
        Rat v = T.cyc.rational_part(sum);
        require(v.get_den() == 1, errc::internal, "idempotent coefficient not integral");
        out.e_tilde_gt2[h] = Int(v.get_num());
    }
    return out;
}

std::pair<Rat, Rat> rational_reconstruct(const Rat& x, const Int& den_bound) {
    require(den_bound >= 1, errc::internal, "denominator bound >= 1");
    // continued fraction convergents of x
    Int p0(1), q0(0);
    Int p1 = rfloor(x), q1(1);
    Rat rem = x - Rat(p1);
    Rat best(p1);
    while (rem != 0) {
        Rat y = 1 / rem;
        Int a = rfloor(y);
        rem = y - Rat(a);
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > den_bound) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        best = Rat(p1) / Rat(q1);
    }
    Rat resid = x - best;
    if (resid < 0) resid = -resid;
    return {best, resid};
}

SolveAResult solve_A(const CharacterTable& T, const RankData& ranks, const GroupRingQ& Rgamma,
                     const GroupRingQ& Phi0, const Int& den_bound) {
    require(Rgamma.coef.size() == T.g && Phi0.coef.size() == T.g, errc::inconsistent_dimensions,
            "group ring size mismatch");
    const CycField& F = T.cyc;
    unsigned long phiE = (unsigned long)F.degree();

    // per class with r = 2: q_i = Phi0^(chi) / Rgamma^(chi)
    std::vector<CycElem> q(T.classes.size(), F.zero());
    for (size_t i = 0; i < T.classes.size(); ++i) {
        if (ranks.r[i] != 2) continue;
        unsigned long t = T.classes[i][0];
        CycElem rg = F.zero(), ph = F.zero();
        for (unsigned long h = 0; h < T.g; ++h) {
            CycElem c = T.chi(t, h);
            rg = F.add(rg, F.mul(F.from_rat(Rgamma.coef[h]), c));
            ph = F.add(ph, F.mul(F.from_rat(Phi0.coef[h]), c));
        }
        require(!rg.is_zero(), errc::singular_regulator,
                "regulator transform vanishes on an [S,2] character");
        q[i] = F.mul(ph, F.inv(rg));
    }

    SolveAResult out;
    out.A_exact.orders = Rgamma.orders;
    out.A_exact.coef.assign(T.g, Rat(0));
    for (unsigned long h = 0; h < T.g; ++h) {
        auto he = unrank_mixed(h, T.orders);
        std::vector<long> inv(he);
        for (size_t j = 0; j < inv.size(); ++j) inv[j] = (T.orders[j] - inv[j]) % T.orders[j];
        unsigned long hinv = rank_mixed(inv, T.orders);
        Rat acc(0);
        for (size_t i = 0; i < T.classes.size(); ++i) {
            if (ranks.r[i] != 2) continue;
            unsigned long t = T.classes[i][0];
            CycElem val = F.mul(q[i], T.chi(t, hinv));
            // sum over the orbit = (phi(d_i)/phi(E)) * Tr_{Q(zeta_E)/Q}
            Rat tr = F.trace(val);
            Rat frac((unsigned long)euler_phi(T.class_order[i]), (unsigned long)phiE);
            frac.canonicalize();
            acc += tr * frac;
        }
        acc /= (long)T.g;
        out.A_exact.coef[h] = acc;
    }
    out.A.orders = Rgamma.orders;
    out.A.coef.assign(T.g, Rat(0));
    out.residual = 0;
    for (unsigned long h = 0; h < T.g; ++h) {
        auto [v, r] = rational_reconstruct(out.A_exact.coef[h], den_bound);
        out.A.coef[h] = v;
        if (r > out.residual) out.residual = r;
    }
    return out;
}

// ---- lattices -------------------------------------------------------------------

LatticeBasis hnf_lattice(const QMat& gens) {
    Int den(1);
    for (auto& v : gens.a) den = lcm(den, Int(v.get_den()));
    ZMat zi(gens.rows, gens.cols);
    for (size_t i = 0; i < gens.rows; ++i)
        for (size_t j = 0; j < gens.cols; ++j) zi(i, j) = Int(gens(i, j) * Rat(den));
    ZMat h = hnf_cols(zi);
    LatticeBasis out;
    out.basis = QMat(gens.rows, h.cols);
    for (size_t i = 0; i < gens.rows; ++i)
        for (size_t j = 0; j < h.cols; ++j) out.basis(i, j) = Rat(h(i, j)) / Rat(den);
    return out;
}

std::pair<bool, Int> lattice_membership(const LatticeBasis& L, const std::vector<Rat>& v) {
    std::vector<Rat> x;
    bool solvable = solve(L.basis, v, x);
    require(solvable, errc::rank_mismatch, "vector outside the lattice's span");
    Int d(1);
    for (auto& c : x) d = lcm(d, Int(c.get_den()));
    return {d == 1, d};
}

Rat lattice_index(const LatticeBasis& L1, const LatticeBasis& L2) {
    require(L1.basis.rows == L2.basis.rows && L1.basis.cols == L2.basis.cols &&
                L1.basis.rows == L1.basis.cols,
            errc::rank_mismatch, "index needs two full-rank lattices of equal rank");
    Rat d1 = det(L1.basis), d2 = det(L2.basis);
    require(d2 != 0 && d1 != 0, errc::rank_mismatch, "degenerate lattice");
    Rat r = d1 / d2;
    if (r < 0) r = -r;
    return r;
}

// ---- wedge space ------------------------------------------------------------------

WedgeSpace make_wedge_space(const CharacterTable& T, const std::vector<long>& ranks) {
    require(ranks.size() == T.classes.size(), errc::inconsistent_dimensions, "rank list size");
    WedgeSpace W;
    W.T = &T;
    W.ranks = ranks;
    // non-B2 blocks first, B2 blocks (r_i = 2, the single pair) last
    for (int pass = 0; pass < 2; ++pass)
        for (size_t i = 0; i < T.classes.size(); ++i) {
            bool b2 = ranks[i] == 2;
            if ((pass == 1) != b2) continue;
            long dphi = (long)euler_phi(T.class_order[i]);
            for (long j = 0; j < ranks[i]; ++j)
                for (long jp = j + 1; jp < ranks[i]; ++jp) {
                    W.blocks.push_back({i, j, jp, dphi, (size_t)W.dim, b2});
                    W.dim += dphi;
                }
        }
    W.b2_offset = W.dim;
    for (auto& b : W.blocks)
        if (b.in_B2) { W.b2_offset = (long)b.offset; break; }
    return W;
}

// reduce x^k modulo the d-th cyclotomic polynomial, as rational coefficients
static std::vector<Rat> xpow_mod_cyclo(long k, long d) {
    auto phi = cyclotomic_poly(d);
    long deg = (long)phi.size() - 1;
    std::vector<Rat> cur(deg, Rat(0));
    cur[0] = 1;
    k %= d;
    for (long s = 0; s < k; ++s) {
        std::vector<Rat> nxt(deg, Rat(0));
        for (long i = 0; i < deg; ++i) {
            if (cur[i] == 0) continue;
            if (i + 1 < deg) {
                nxt[i + 1] += cur[i];
            } else {
                for (long j = 0; j < deg; ++j) nxt[j] -= cur[i] * Rat(phi[j]);
            }
        }
        cur = nxt;
    }
    return cur;
}

QMat wedge_expand(const WedgeSpace& W, const ZMat& sigma_action,
                  const std::vector<std::vector<std::vector<Rat>>>& v_vectors) {
    const CharacterTable& T = *W.T;
    require(T.orders.size() == 1, errc::inconsistent_dimensions,
            "unit data handling is implemented for cyclic G");
    size_t usize = sigma_action.rows;
    std::vector<std::pair<std::vector<Rat>, std::vector<Rat>>> terms;
    QMat out(W.dim, usize * (usize - 1) / 2);
    size_t col = 0;
    for (size_t l = 0; l < usize; ++l)
        for (size_t lp = l + 1; lp < usize; ++lp) {
            std::vector<Rat> el(usize, Rat(0)), elp(usize, Rat(0));
            el[l] = 1;
            elp[lp] = 1;
            auto coords = wedge_coords(W, sigma_action, v_vectors, {{el, elp}});
            for (long i = 0; i < W.dim; ++i) out(i, col) = coords[i];
            ++col;
        }
    return out;
}

std::vector<Rat> wedge_coords(
    const WedgeSpace& W, const ZMat& sigma_action,
    const std::vector<std::vector<std::vector<Rat>>>& v_vectors,
    const std::vector<std::pair<std::vector<Rat>, std::vector<Rat>>>& terms) {
    const CharacterTable& T = *W.T;
    require(T.orders.size() == 1, errc::inconsistent_dimensions,
            "unit data handling is implemented for cyclic G");
    size_t usize = sigma_action.rows;
    // basis E: columns sigma^k v_{i,j} over the u-basis
    struct Ecol { size_t cls; long j; long k; };
    std::vector<Ecol> ecols;
    std::vector<std::vector<Rat>> cols;
    std::vector<ZMat> spow = {ZMat::identity(usize)};
    for (long k = 1; k < T.orders[0]; ++k) spow.push_back(mul(spow.back(), sigma_action));
    for (size_t i = 0; i < T.classes.size(); ++i) {
        long dphi = (long)euler_phi(T.class_order[i]);
        require((long)v_vectors[i].size() == W.ranks[i], errc::inconsistent_dimensions,
                "need r_i isotypic vectors per class");
        for (long j = 0; j < W.ranks[i]; ++j)
            for (long k = 0; k < dphi; ++k) {
                std::vector<Rat> c(usize, Rat(0));
                for (size_t a = 0; a < usize; ++a)
                    for (size_t b = 0; b < usize; ++b)
                        c[a] += Rat(spow[k](a, b)) * v_vectors[i][j][b];
                cols.push_back(c);
                ecols.push_back({i, j, k});
            }
    }
    require(cols.size() == usize, errc::inconsistent_dimensions,
            "isotypic basis dimension mismatch");
    QMat E(usize, usize);
    for (size_t c = 0; c < usize; ++c)
        for (size_t r = 0; r < usize; ++r) E(r, c) = cols[c][r];
    QMat Einv = inverse(E);

    std::vector<Rat> out(W.dim, Rat(0));
    auto block_of = [&](size_t cls, long j, long jp) -> const WedgeSpace::Block* {
        for (auto& b : W.blocks)
            if (b.cls == cls && b.j == j && b.jp == jp) return &b;
        return nullptr;
    };
    for (auto& [ul, ulp] : terms) {
        // coordinates over E
        std::vector<Rat> x(usize, Rat(0)), y(usize, Rat(0));
        for (size_t r = 0; r < usize; ++r)
            for (size_t c2 = 0; c2 < usize; ++c2) {
                x[r] += Einv(r, c2) * ul[c2];
                y[r] += Einv(r, c2) * ulp[c2];
            }
        for (size_t a = 0; a < usize; ++a) {
            if (x[a] == 0) continue;
            for (size_t b = 0; b < usize; ++b) {
                if (y[b] == 0) continue;
                const Ecol &A = ecols[a], &B = ecols[b];
                if (A.cls != B.cls) continue;
                if (A.j == B.j) continue; // v ^ v = 0 over QG
                Rat c = x[a] * y[b];
                long jlo = std::min(A.j, B.j), jhi = std::max(A.j, B.j);
                if (A.j > B.j) c = -c;
                const auto* blk = block_of(A.cls, jlo, jhi);
                require(blk != nullptr, errc::internal, "missing wedge block");
                auto pw = xpow_mod_cyclo(A.k + B.k, T.class_order[A.cls]);
                for (long t = 0; t < blk->dim; ++t) out[blk->offset + t] += c * pw[t];
            }
        }
    }
    return out;
}

QMat project_S2(const WedgeSpace& W, const QMat& gens) {
    for (size_t j = 0; j < gens.cols; ++j)
        for (long i = 0; i < W.b2_offset; ++i)
            require(gens(i, j) == 0, errc::internal, "component outside the [S,2] part");
    QMat out(W.dim - W.b2_offset, gens.cols);
    for (size_t j = 0; j < gens.cols; ++j)
        for (long i = W.b2_offset; i < W.dim; ++i) out(i - W.b2_offset, j) = gens(i, j);
    return out;
}

LatticeBasis project_S2_lattice(const WedgeSpace& W, const QMat& gens) {
    LatticeBasis full = hnf_lattice(gens);
    // columns whose pivot row lies in the B2 region have zeros above it
    QMat keep(W.dim - W.b2_offset, 0);
    std::vector<std::vector<Rat>> cols;
    for (size_t j = 0; j < full.basis.cols; ++j) {
        bool above_zero = true;
        for (long i = 0; i < W.b2_offset; ++i)
            if (full.basis(i, j) != 0) above_zero = false;
        if (!above_zero) continue;
        std::vector<Rat> c;
        for (long i = W.b2_offset; i < W.dim; ++i) c.push_back(full.basis(i, j));
        cols.push_back(c);
    }
    QMat m(W.dim - W.b2_offset, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
    return hnf_lattice(m);
}

std::vector<Rat> qg_act_B2(const WedgeSpace& W, const GroupRingQ& A, const std::vector<Rat>& v) {
    const CharacterTable& T = *W.T;
    require(T.orders.size() == 1, errc::inconsistent_dimensions, "cyclic G only");
    long n = T.orders[0];
    std::vector<Rat> out(v.size(), Rat(0));
    for (auto& blk : W.blocks) {
        if (!blk.in_B2) continue;
        size_t off = blk.offset - W.b2_offset;
        long d = T.class_order[blk.cls];
        // multiply the block polynomial by sum A_m x^m mod Phi_d
        for (long m = 0; m < n; ++m) {
            if (A.coef[m] == 0) continue;
            for (long i = 0; i < blk.dim; ++i) {
                if (v[off + i] == 0) continue;
                auto pw = xpow_mod_cyclo(m + i, d);
                for (long t = 0; t < blk.dim; ++t) out[off + t] += A.coef[m] * v[off + i] * pw[t];
            }
        }
    }
    return out;
}

// ---- the end-to-end check ----------------------------------------------------------

VerifyReport check_conjecture_parts(const VerifyInput& in) {
    CharacterTable T(in.orders);
    RankData ranks = make_rank_data(T, in.ranks);
    Int bound = in.den_bound;
    if (bound == 0) bound = 2 * in.b * pow_int(Int((long)T.g), 3);
    SolveAResult sol = solve_A(T, ranks, in.rgamma, in.phi0, bound);

    VerifyReport rep;
    rep.A = sol.A;
    rep.residual = sol.residual;

    WedgeSpace W = make_wedge_space(T, in.ranks);
    long b2dim = W.dim - W.b2_offset;

    LatticeBasis L;          // L^{[S,2]} in B2 coordinates
    std::vector<Rat> gamma;  // in B2 coordinates
    bool have_lattice = false;
    if (in.has_units) {
        QMat wedges = wedge_expand(W, in.sigma_action, in.v_vectors);
        L = project_S2_lattice(W, wedges);
        require((long)L.basis.cols == b2dim, errc::rank_mismatch,
                "wedge lattice does not have full [S,2] rank");
        auto gfull = wedge_coords(W, in.sigma_action, in.v_vectors, in.gamma_terms);
        QMat gmat(W.dim, 1);
        for (long i = 0; i < W.dim; ++i) gmat(i, 0) = gfull[i];
        gamma.assign(b2dim, Rat(0));
        QMat gproj = project_S2(W, gmat); // throws if gamma has a component outside
        for (long i = 0; i < b2dim; ++i) gamma[i] = gproj(i, 0);
        have_lattice = true;
    } else if (in.b == 1 && in.orders.size() == 1 && !in.has_assumed_df) {
        // L = ZG gamma with gamma free over QG^{[S,2]}: model gamma as 1 in
        // each block, L as the span of its sigma-translates
        gamma.assign(b2dim, Rat(0));
        for (auto& blk : W.blocks)
            if (blk.in_B2) gamma[blk.offset - W.b2_offset] = 1;
        have_lattice = true;
        QMat translates(b2dim, (size_t)T.g);
        for (unsigned long m = 0; m < T.g; ++m) {
            GroupRingQ shift{in.orders, std::vector<Rat>(T.g, Rat(0))};
            shift.coef[m] = 1;
            auto col = qg_act_B2(W, shift, gamma);
            for (long i = 0; i < b2dim; ++i) translates(i, m) = col[i];
        }
        L = hnf_lattice(translates);
        require((long)L.basis.cols == b2dim, errc::rank_mismatch, "ZG gamma not of full rank");
    }

    if (have_lattice) {
        // index of ZG gamma inside L^{[S,2]} (a data cross-check when units given)
        QMat translates(b2dim, (size_t)T.g);
        for (unsigned long m = 0; m < T.g; ++m) {
            GroupRingQ shift{in.orders, std::vector<Rat>(T.g, Rat(0))};
            shift.coef[m] = 1;
            auto col = qg_act_B2(W, shift, gamma);
            for (long i = 0; i < b2dim; ++i) translates(i, m) = col[i];
        }
        LatticeBasis ZGgamma = hnf_lattice(translates);
        require((long)ZGgamma.basis.cols == b2dim, errc::rank_mismatch,
                "gamma does not generate a finite-index submodule");
        Rat gidx = lattice_index(ZGgamma, L);
        require(gidx.get_den() == 1, errc::internal, "ZG gamma not inside the lattice");
        rep.gamma_index = Int(gidx.get_num());

        // eta = A gamma
        auto eta = qg_act_B2(W, sol.A, gamma);
        auto [member, dd] = lattice_membership(L, eta);
        (void)member;
        rep.d_f = dd;
        rep.d_f_computed = true;

        // d_{f, sigma-1}
        GroupRingQ sm1{in.orders, std::vector<Rat>(T.g, Rat(0))};
        sm1.coef[0] = -1;
        if (T.g > 1) sm1.coef[rank_mixed({1}, in.orders)] = 1;
        auto eta_s = qg_act_B2(W, sm1, eta);
        auto [m2, dd2] = lattice_membership(L, eta_s);
        (void)m2;
        rep.d_f_sigma = {dd2};
        rep.d_f_sigma_computed = true;

        // index of ZG eta in d_f^{-1} L^{[S,2]}
        QMat etacols(b2dim, (size_t)T.g);
        for (unsigned long m = 0; m < T.g; ++m) {
            GroupRingQ shift{in.orders, std::vector<Rat>(T.g, Rat(0))};
            shift.coef[m] = 1;
            auto col = qg_act_B2(W, shift, eta);
            for (long i = 0; i < b2dim; ++i) etacols(i, m) = col[i];
        }
        LatticeBasis ZGeta = hnf_lattice(etacols);
        require((long)ZGeta.basis.cols == b2dim, errc::rank_mismatch,
                "eta does not generate a finite-index submodule");
        LatticeBasis Lscaled = L;
        for (auto& v : Lscaled.basis.a) v /= Rat(rep.d_f);
        rep.index_eta = lattice_index(ZGeta, Lscaled);
        rep.index_computed = true;
    } else {
        require(in.has_assumed_df, errc::internal,
                "no lattice data and no assumed d_f supplied");
        rep.d_f = in.assumed_df;
        rep.d_f_computed = false;
    }

    // conjecture clause: d_f | 2 g^e (f = q^l) or d_f | g^e
    Int df = rep.d_f;
    if (in.prime_power_f && fmod(df, Int(2)) == 0) df /= 2;
    for (int e = 0; e < 64 && df > 1; ++e) {
        Int c = gcd(df, Int((long)T.g));
        if (c == 1) break;
        df /= c;
    }
    rep.df_bound_ok = df == 1;
    return rep;
}

} // namespace pstark
