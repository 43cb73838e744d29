/// \file
/// Hall numbers, Euler forms, extension counts and Green's formula on Rep(Q).

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hallforge/registry.hpp"

namespace hallforge::hall {

using repcat::ClassRegistry;
using repcat::DimVec;
using repcat::IsoClassId;

/// Subobject statistics of one object C: (quotient class, subobject class)
/// mapped to the number of subobjects realising that pair.
using SubobjectTable = std::map<std::pair<IsoClassId, IsoClassId>, mpz_class>;

struct GreenSides {
  mpq_class lhs;
  mpq_class rhs;
};

/// Hall numbers g^C_{AB} count subobjects of C isomorphic to B whose quotient
/// is isomorphic to A.
class HallEngine {
 public:
  explicit HallEngine(const ClassRegistry& registry);

  const ClassRegistry& registry() const noexcept { return registry_; }
  std::uint32_t q() const noexcept { return registry_.category().q(); }

  const SubobjectTable& subobject_table(const IsoClassId& c) const;
  void import_subobject_table(const IsoClassId& c, SubobjectTable table);
  std::vector<IsoClassId> tabulated() const;

  mpz_class hall_number(const IsoClassId& a, const IsoClassId& b, const IsoClassId& c) const;
  /// Nonzero g^C_{AB} for all C.
  std::map<IsoClassId, mpz_class> hall_product(const IsoClassId& a, const IsoClassId& b) const;

  int euler_add(const DimVec& d1, const DimVec& d2) const;
  /// q^euler_add(d1, d2).
  mpq_class euler_mult_dims(const DimVec& d1, const DimVec& d2) const;
  /// |Hom(A,B)| / |Ext^1(A,B)|.
  mpq_class euler_mult(const IsoClassId& a, const IsoClassId& b) const;

  std::size_t hom_dim(const IsoClassId& a, const IsoClassId& b) const;
  mpz_class hom_count(const IsoClassId& a, const IsoClassId& b) const;
  /// q^(dim Hom - euler_add); a negative exponent throws InternalInconsistency.
  mpz_class ext1_count(const IsoClassId& a, const IsoClassId& b) const;
  const mpz_class& aut(const IsoClassId& x) const { return registry_.aut(x); }

  /// g^C_{AB} |Hom(A,B)| a_A a_B / a_C; must be a nonnegative integer.
  mpz_class ext1_middle_count(const IsoClassId& a, const IsoClassId& b, const IsoClassId& c) const;

  /// sum_I g^B_{IM} g^A_{NI} a_M a_N a_I / (a_A a_B).
  mpq_class gamma(const IsoClassId& a, const IsoClassId& b, const IsoClassId& m, const IsoClassId& n) const;

  GreenSides green_sides(const IsoClassId& a, const IsoClassId& b, const IsoClassId& a2,
                         const IsoClassId& b2) const;

  /// q^e for any integer e.
  mpq_class q_power(long e) const;

 private:
  const ClassRegistry& registry_;
  mutable std::mutex mutex_;
  mutable std::map<IsoClassId, std::unique_ptr<SubobjectTable>> tables_;
  mutable std::map<std::pair<IsoClassId, IsoClassId>, std::size_t> hom_dims_;
};

}  // namespace hallforge::hall
