#pragma once

#include <functional>

#include "pstark/quadfield.hpp"

namespace pstark {

struct ClassLabel {
    std::vector<long> e; // reduced componentwise mod the group's orders
    bool operator==(const ClassLabel& o) const { return e == o.e; }
};

// Cl_f(k) or Cl_{f+}(k) as an abstract abelian group in invariant-factor form,
// with generator ideals and a brute-force dlog facility.
class RayClassGroup {
  public:
    // exact-sequence order: h(k) * |(O/f)^x| * (4 if with_inf) / |im(units)|
    static unsigned long predicted_order(const QuadField& k, const QuadIdeal& f, bool with_inf);
    static long wide_class_number(const QuadField& k);

    // generators found by scanning small prime ideals coprime to f and aux
    static RayClassGroup build(const QuadField& k, const QuadIdeal& f, bool with_inf,
                               const Int& aux);
    // user-supplied structure, validated against the group axioms and order
    static RayClassGroup injected(const QuadField& k, const QuadIdeal& f, bool with_inf,
                                  const Int& aux, const std::vector<long>& orders,
                                  const std::vector<QuadIdeal>& gens);

    const std::vector<long>& orders() const { return orders_; }
    unsigned long size() const;
    const QuadIdeal& modulus() const { return f_; }
    bool with_infinite() const { return with_inf_; }

    ClassLabel zero() const { return {std::vector<long>(orders_.size(), 0)}; }
    ClassLabel add(const ClassLabel& x, const ClassLabel& y) const;
    ClassLabel neg(const ClassLabel& x) const;
    unsigned long index_of(const ClassLabel& c) const { return rank_mixed(c.e, orders_); }
    ClassLabel label_at(unsigned long idx) const { return {unrank_mixed(idx, orders_)}; }

    // I and J coprime to f generate the same ray class
    bool ray_equivalent(const QuadIdeal& I, const QuadIdeal& J) const;
    // I = (a) with a = 1 mod* f (and totally positive when with_inf)
    bool ray_trivial(const QuadIdeal& I) const;

    ClassLabel class_of(const QuadIdeal& I) const; // NotCoprime if (I, f) != 1
    const QuadIdeal& stored_representative(const ClassLabel& c) const;
    // prime ideal of least norm in the class, coprime to f and coprime_to
    QuadIdeal representative(const ClassLabel& c, const Int& coprime_to) const;

  private:
    const QuadField* k_ = nullptr;
    QuadIdeal f_;
    bool with_inf_ = false;
    long eps_period_ = 1; // order of eps0 in the residue/sign group
    std::vector<long> orders_;
    std::vector<QuadIdeal> gens_;
    std::vector<QuadIdeal> reps_; // representative ideal per element index

    RayClassGroup() = default;
    void init_eps_period();
    void finalize_reps(const std::vector<std::pair<std::vector<long>, QuadIdeal>>& elems,
                       const ZMat& U, const ZMat& D, size_t ngens);
};

// section of pi_{f+,f} (as a lookup) together with |ker pi_{f+,f}|
struct LiftData {
    std::vector<ClassLabel> lift; // indexed by the Cl_f element index
    unsigned long kernel_size = 1;
};
LiftData lift_and_kernel(const RayClassGroup& fplus, const RayClassGroup& f);

} // namespace pstark
