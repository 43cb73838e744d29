/// \file
/// Periodic and bounded complexes over Rep(Q).
///
/// A complex is stored as a representation of the extended quiver with one
/// vertex (v, i) per quiver vertex and degree position, a copy of every arrow
/// in each degree, and a differential arrow (v, i) -> (v, i+1). Chain maps are
/// then exactly the morphisms of that representation, so Hom spaces, class
/// tables and subobject counts come from the repcat and hall machinery.

#pragma once

#include <memory>
#include <vector>

#include <gmpxx.h>

#include "hallforge/graded.hpp"
#include "hallforge/hall.hpp"

namespace hallforge::cpx {

using repcat::Morphism;
using repcat::Rep;

struct ComplexObj {
  int t = 0;
  int lo = 0;                       ///< degree of components[0]
  std::vector<Rep> components;      ///< consecutive degrees
  std::vector<Morphism> differentials;  ///< differentials[k]: component k -> k+1 (mod t)
};

/// |Hom_{D_t}(A[s], B)| = prod_j |Hom(A^{j+s}, B^j)| |Ext^1(A^{j+s}, B^{j-1})|.
mpz_class hom_dt_count(const hall::HallEngine& hall, const GradedObject& a, const GradedObject& b, int shift);

/// prod_i |Hom(A^i,B^i)| |Ext^1(A^i,B^i)| prod_{k=1}^{t-1} <A^{i+k}, B^i>^{(-1)^k}.
mpq_class alt_hom_product(const hall::HallEngine& hall, const GradedObject& a, const GradedObject& b);

/// Complexes with components in `positions` consecutive degrees starting at
/// `lo` (bounded case) or in all of Z_t (periodic case).
class ComplexCategory {
 public:
  ComplexCategory(const hall::HallEngine& base, PeriodSpec period, int lo = 0, int positions = 0);

  PeriodSpec period() const noexcept { return period_; }
  int positions() const noexcept { return positions_; }
  int lo() const noexcept { return lo_; }
  const hall::HallEngine& base() const noexcept { return base_; }
  const repcat::RepCategory& extended() const noexcept { return *ext_category_; }
  const repcat::ClassRegistry& registry() const noexcept { return *ext_registry_; }
  const hall::HallEngine& hall() const noexcept { return *ext_hall_; }

  Rep to_extended(const ComplexObj& c) const;
  ComplexObj from_extended(const Rep& r) const;
  /// d^2 = 0 and every differential commutes with the arrow maps.
  bool satisfies_relations(const Rep& r) const;
  void check(const ComplexObj& c) const;

  /// Per-degree-position dimension vectors flattened for the extended quiver.
  DimVec extended_dims(const std::vector<DimVec>& per_degree) const;
  std::vector<DimVec> degree_dims(const DimVec& extended) const;

  ComplexObj zero_complex() const;
  ComplexObj as_complex(const GradedObject& g) const;

  GradedObject homology(const ComplexObj& c) const;
  mpz_class hom_ct_count(const ComplexObj& x, const ComplexObj& y) const;
  mpz_class aut_ct_count(const ComplexObj& x) const;
  std::vector<ComplexObj> enumerate_complex_classes(const std::vector<DimVec>& per_degree) const;
  /// Subcomplexes of c isomorphic to b with quotient isomorphic to a.
  mpz_class hall_number_ct(const GradedObject& a, const GradedObject& b, const ComplexObj& c) const;

  /// Number of elements of Ext^1_{C_t}(A, B) whose middle term has homology X,
  /// summed over complex classes with the right component dimensions.
  /// Period 1 only.
  mpz_class dt_hom_with_cone_count(const GradedObject& a, const GradedObject& b, const GradedObject& x) const;

 private:
  int position_of(int degree) const;

  const hall::HallEngine& base_;
  PeriodSpec period_;
  int lo_;
  int positions_;
  std::unique_ptr<repcat::RepCategory> ext_category_;
  std::unique_ptr<repcat::ClassRegistry> ext_registry_;
  std::unique_ptr<hall::HallEngine> ext_hall_;
};

}  // namespace hallforge::cpx
