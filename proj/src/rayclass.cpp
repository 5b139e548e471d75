#include "pstark/rayclass.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pstark {

long RayClassGroup::wide_class_number(const QuadField& k) {
    // count rho-cycles of reduced ideals (a, b); one cycle per wide class
    const Int d = k.disc();
    Int bound = isqrt(d);
    // local copies of the walk pieces via the public reduction API: we only
    // need the state graph, which principal_generator also traverses.  The
    // states are pairs (a, b) with b normalized; recreate the normalization
    // through floor arithmetic on ideals.
    auto normalize = [&](const Int& a, const Int& b) {
        QuadElem momega{Rat(0), Rat(-1)}; // -omega
        Int t = k.floor_at(k.conj(momega), 0); // floor(-conj(omega))
        return std::pair<Int, Int>{a, t - fmod(Int(t - b), a)};
    };
    auto step = [&](const std::pair<Int, Int>& s) {
        QuadElem psi{Rat(s.second), Rat(1)};
        Int n = Int(k.norm(psi).get_num());
        Int cp = abs(n / s.first);
        return normalize(cp, Int(-s.second - d));
    };
    std::set<std::pair<Int, Int>> visited;
    long cycles = 0;
    for (Int a(1); a <= bound; ++a) {
        for (Int b0(0); b0 < a; ++b0) {
            auto s = normalize(a, b0);
            QuadElem psi{Rat(s.second), Rat(1)};
            Rat n = k.norm(psi);
            if (fmod(Int(n.get_num()), a) != 0) continue; // not an ideal
            if (visited.count(s)) continue;
            std::vector<std::pair<Int, Int>> path;
            std::set<std::pair<Int, Int>> local;
            auto cur = s;
            for (;;) {
                if (visited.count(cur)) break; // merges into known territory
                if (local.count(cur)) { ++cycles; break; }
                local.insert(cur);
                path.push_back(cur);
                cur = step(cur);
            }
            for (auto& st : path) visited.insert(st);
        }
    }
    return cycles;
}

// |(O/f)^x| by the local-factor formula
static unsigned long unit_group_order(const QuadField& k, const QuadIdeal& f) {
    if (f == k.ideal_O()) return 1;
    unsigned long out = 1;
    Rat nf = k.norm(f);
    for (auto& [p, e0] : factor(Int(nf.get_num()))) {
        (void)e0;
        for (auto& q : k.primes_above(p)) {
            long e = k.ord_at(f, q);
            if (e == 0) continue;
            Int nq = Int(k.norm(q).get_num());
            unsigned long loc = (unsigned long)(nq.get_ui() - 1);
            for (long i = 1; i < e; ++i) loc *= nq.get_ui();
            out *= loc;
        }
    }
    return out;
}

// order of the subgroup of (O/f)^x x {signs} generated by -1 and eps0
static unsigned long unit_image_order(const QuadField& k, const QuadIdeal& f, bool with_inf) {
    struct State {
        std::pair<Int, Int> res;
        int s1, s2;
        bool operator<(const State& o) const {
            return std::tie(res, s1, s2) < std::tie(o.res, o.s1, o.s2);
        }
    };
    auto state_of = [&](const QuadElem& u) {
        State st;
        st.res = k.residue(f, u);
        st.s1 = with_inf ? k.sign_at(u, 0) : 1;
        st.s2 = with_inf ? k.sign_at(u, 1) : 1;
        return st;
    };
    // direct closure: multiply actual unit representatives until stable
    std::set<State> seen;
    std::vector<QuadElem> frontier = {QuadElem::integer(1)};
    seen.insert(state_of(QuadElem::integer(1)));
    std::vector<QuadElem> gens = {QuadElem::integer(-1), k.fundamental_unit()};
    while (!frontier.empty()) {
        std::vector<QuadElem> next;
        for (auto& u : frontier)
            for (auto& g : gens) {
                QuadElem v = k.mul(u, g);
                // reduce coordinates modulo f to keep sizes small; signs are
                // tracked before reduction so reduce only when signs free
                State st = state_of(v);
                if (seen.insert(st).second) next.push_back(v);
            }
        frontier = std::move(next);
        require(seen.size() < 100000, errc::internal, "unit image runaway");
    }
    return seen.size();
}

unsigned long RayClassGroup::predicted_order(const QuadField& k, const QuadIdeal& f,
                                             bool with_inf) {
    unsigned long h = (unsigned long)wide_class_number(k);
    unsigned long uf = unit_group_order(k, f);
    unsigned long total = h * uf * (with_inf ? 4 : 1);
    unsigned long im = unit_image_order(k, f, with_inf);
    require(total % im == 0, errc::internal, "exact sequence order not integral");
    return total / im;
}

void RayClassGroup::init_eps_period() {
    const QuadField& k = *k_;
    QuadElem u = QuadElem::integer(1);
    long bound = 16 * (long)Int(k.norm(f_).get_num()).get_si() + 16;
    for (long n = 1; n <= bound; ++n) {
        u = k.mul(u, k.fundamental_unit());
        if (!k.contains(f_, u - QuadElem::integer(1))) continue;
        if (with_inf_ && !(k.norm(u) == 1 && k.sign_at(u, 0) > 0)) continue;
        eps_period_ = n;
        return;
    }
    fail(errc::internal, "eps period not found");
}

bool RayClassGroup::ray_trivial(const QuadIdeal& I) const {
    const QuadField& k = *k_;
    QuadIdeal J{Rat(1), I.a, I.b, I.c};
    require(k.omega_closed(J), errc::internal, "not an O-ideal");
    auto g0 = k.principal_generator(J);
    if (!g0) return false;
    QuadElem g{g0->a * I.scale, g0->b * I.scale};
    QuadElem u = g;
    const QuadElem eps = k.fundamental_unit();
    for (long n = 0; n < eps_period_; ++n) {
        for (int s : {1, -1}) {
            QuadElem v = s > 0 ? u : -u;
            if (with_inf_ && !k.totally_positive(v)) continue;
            if (k.is_one_mod_star(f_, v)) return true;
        }
        u = k.mul(u, eps);
    }
    return false;
}

bool RayClassGroup::ray_equivalent(const QuadIdeal& I, const QuadIdeal& J) const {
    return ray_trivial(k_->mul(I, k_->inv(J)));
}

unsigned long RayClassGroup::size() const {
    unsigned long s = 1;
    for (long o : orders_) s *= (unsigned long)o;
    return s;
}

ClassLabel RayClassGroup::add(const ClassLabel& x, const ClassLabel& y) const {
    ClassLabel r = zero();
    for (size_t i = 0; i < orders_.size(); ++i) r.e[i] = (x.e[i] + y.e[i]) % orders_[i];
    return r;
}

ClassLabel RayClassGroup::neg(const ClassLabel& x) const {
    ClassLabel r = zero();
    for (size_t i = 0; i < orders_.size(); ++i) r.e[i] = (orders_[i] - x.e[i]) % orders_[i];
    return r;
}

void RayClassGroup::finalize_reps(
    const std::vector<std::pair<std::vector<long>, QuadIdeal>>& elems, const ZMat& U,
    const ZMat& D, size_t ngens) {
    // convert accumulated gen-coordinates to invariant-factor coordinates
    std::vector<long> full_orders(ngens);
    for (size_t i = 0; i < ngens; ++i) full_orders[i] = D(i, i).get_si();
    std::vector<size_t> keep;
    for (size_t i = 0; i < ngens; ++i)
        if (full_orders[i] > 1) keep.push_back(i);
    orders_.clear();
    for (size_t i : keep) orders_.push_back(full_orders[i]);
    reps_.assign(size(), QuadIdeal{});
    std::vector<bool> seen(size(), false);
    for (auto& [x, ideal] : elems) {
        std::vector<long> y(ngens, 0);
        for (size_t i = 0; i < ngens; ++i) {
            Int acc(0);
            for (size_t j = 0; j < ngens; ++j) acc += U(i, j) * x[j];
            y[i] = (long)fmod(acc, Int(full_orders[i])).get_si();
        }
        for (size_t i = 0; i < ngens; ++i)
            require(full_orders[i] > 1 || y[i] == 0, errc::internal, "trivial factor nonzero");
        std::vector<long> yk;
        for (size_t i : keep) yk.push_back(y[i]);
        unsigned long idx = rank_mixed(yk, orders_);
        require(!seen[idx], errc::internal, "element table collision");
        seen[idx] = true;
        reps_[idx] = ideal;
    }
}

RayClassGroup RayClassGroup::build(const QuadField& k, const QuadIdeal& f, bool with_inf,
                                   const Int& aux) {
    require(f.is_integral(), errc::internal, "modulus must be integral");
    RayClassGroup G;
    G.k_ = &k;
    G.f_ = f;
    G.with_inf_ = with_inf;
    G.init_eps_period();

    unsigned long target = predicted_order(k, f, with_inf);
    Int fnorm = Int(k.norm(f).get_num());

    std::vector<std::pair<std::vector<long>, QuadIdeal>> elems = {{{}, k.ideal_O()}};
    std::vector<QuadIdeal> gens;
    std::vector<long> rel_order;                 // order of gen i over previous subgroup
    std::vector<std::vector<long>> rel_target;   // q^e ~ prod gens^rel_target

    auto find_index = [&](const QuadIdeal& Q) -> long {
        for (size_t i = 0; i < elems.size(); ++i)
            if (G.ray_equivalent(Q, elems[i].second)) return (long)i;
        return -1;
    };

    Int limit(64);
    while (elems.size() < target) {
        require(limit <= 65536, errc::internal, "generator scan bound exceeded");
        for (auto& q : k.prime_ideals_upto(limit)) {
            if (elems.size() >= target) break;
            if (!k.coprime_to(q, fnorm * aux)) continue;
            if (find_index(q) >= 0) continue;
            // new generator: find its order over the current subgroup
            QuadIdeal P = q;
            long e = 1;
            long found = -1;
            while (found < 0) {
                P = k.mul(P, q);
                ++e;
                require((unsigned long)e <= target, errc::internal, "order search runaway");
                found = find_index(P);
            }
            std::vector<long> rel = elems[found].first;
            for (auto& [x, ideal] : elems) x.push_back(0);
            rel.resize(gens.size() + 1, 0);
            gens.push_back(q);
            rel_order.push_back(e);
            rel_target.push_back(rel);
            // extend the element table by q^j, j = 1..e-1
            std::vector<std::pair<std::vector<long>, QuadIdeal>> bigger = elems;
            QuadIdeal qp = k.ideal_O();
            for (long j = 1; j < e; ++j) {
                qp = k.mul(qp, q);
                for (auto& [x, ideal] : elems) {
                    auto y = x;
                    y[gens.size() - 1] = j;
                    bigger.push_back({y, k.mul(ideal, qp)});
                }
            }
            elems = std::move(bigger);
        }
        limit *= 4;
    }

    if (gens.empty()) {
        G.orders_.clear();
        G.reps_ = {k.ideal_O()};
        return G;
    }
    // relation matrix: column i is e_i u_i - rel_i
    size_t r = gens.size();
    ZMat R(r, r);
    for (size_t i = 0; i < r; ++i) {
        R(i, i) = rel_order[i];
        for (size_t j = 0; j < i; ++j) R(j, i) -= rel_target[i][j];
    }
    SmithResult s = smith(R);
    G.gens_.clear();
    for (size_t l = 0; l < r; ++l) {
        if (s.d(l, l) <= 1) continue;
        // new generator h_l = prod g_i^(u_inv(i,l))
        QuadIdeal h = k.ideal_O();
        for (size_t i = 0; i < r; ++i) {
            long e = (long)fmod(s.u_inv(i, l), Int((long)target)).get_si();
            h = k.mul(h, k.pow(gens[i], e));
        }
        G.gens_.push_back(h);
    }
    G.finalize_reps(elems, s.u, s.d, r);
    require(G.size() == target, errc::internal, "group size mismatch after smith");
    return G;
}

RayClassGroup RayClassGroup::injected(const QuadField& k, const QuadIdeal& f, bool with_inf,
                                      const Int& aux, const std::vector<long>& orders,
                                      const std::vector<QuadIdeal>& gens) {
    require(orders.size() == gens.size(), errc::inconsistent_groups,
            "orders/generators length mismatch");
    RayClassGroup G;
    G.k_ = &k;
    G.f_ = f;
    G.with_inf_ = with_inf;
    G.init_eps_period();
    unsigned long target = predicted_order(k, f, with_inf);
    unsigned long prod = 1;
    for (long o : orders) prod *= (unsigned long)o;
    require(prod == target, errc::inconsistent_groups,
            "injected order product does not match the exact-sequence order");
    Int fnorm = Int(k.norm(f).get_num());
    for (auto& g : gens)
        require(g.is_integral() && k.coprime_to(g, fnorm * aux), errc::inconsistent_groups,
                "injected generator not coprime to f*aux");
    G.orders_ = orders;
    G.gens_ = gens;
    // build the element table and validate injectivity
    G.reps_.assign(G.size(), QuadIdeal{});
    for (unsigned long idx = 0; idx < G.size(); ++idx) {
        auto e = unrank_mixed(idx, orders);
        QuadIdeal I = k.ideal_O();
        for (size_t i = 0; i < gens.size(); ++i) I = k.mul(I, k.pow(gens[i], e[i]));
        G.reps_[idx] = I;
    }
    for (size_t i = 0; i < gens.size(); ++i)
        require(G.ray_trivial(k.pow(gens[i], orders[i])), errc::inconsistent_groups,
                "injected generator order not annihilated");
    for (unsigned long idx = 1; idx < G.size(); ++idx)
        require(!G.ray_trivial(G.reps_[idx]), errc::inconsistent_groups,
                "injected generators do not give a faithful labeling");
    return G;
}

ClassLabel RayClassGroup::class_of(const QuadIdeal& I) const {
    const QuadField& k = *k_;
    Rat nf = k.norm(f_);
    for (auto& [p, e] : factor(Int(nf.get_num()))) {
        (void)e;
        for (auto& q : k.primes_above(p))
            if (k.ord_at(f_, q) != 0)
                require(k.ord_at(I, q) == 0, errc::not_coprime, "ideal not coprime to f");
    }
    for (unsigned long idx = 0; idx < size(); ++idx)
        if (ray_equivalent(I, reps_[idx])) return label_at(idx);
    fail(errc::internal, "class_of: no matching class");
}

const QuadIdeal& RayClassGroup::stored_representative(const ClassLabel& c) const {
    return reps_[index_of(c)];
}

QuadIdeal RayClassGroup::representative(const ClassLabel& c, const Int& coprime_to) const {
    const QuadField& k = *k_;
    const QuadIdeal& ref = stored_representative(c);
    Int fnorm = Int(k.norm(f_).get_num());
    for (Int limit(64); limit <= 1000000; limit *= 4) {
        for (auto& q : k.prime_ideals_upto(limit)) {
            if (!k.coprime_to(q, fnorm * coprime_to)) continue;
            if (ray_equivalent(q, ref)) return q;
        }
    }
    fail(errc::internal, "no class representative of prime norm below 10^6");
}

LiftData lift_and_kernel(const RayClassGroup& fplus, const RayClassGroup& f) {
    require(fplus.modulus() == f.modulus() && fplus.with_infinite() && !f.with_infinite(),
            errc::inconsistent_groups, "lift expects Cl_{f+} and Cl_f for the same f");
    require(fplus.size() % f.size() == 0, errc::inconsistent_groups,
            "group orders do not divide");
    LiftData out;
    out.kernel_size = fplus.size() / f.size();
    out.lift.resize(f.size());
    for (unsigned long idx = 0; idx < f.size(); ++idx)
        out.lift[idx] = fplus.class_of(f.stored_representative(f.label_at(idx)));
    return out;
}

} // namespace pstark
