/// \file
/// Multiplication on graded objects: the bounded product (period 0) and the
/// odd-periodic product, both with exact coefficients in Q(sqrt q).

#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <utility>

#include "hallforge/cpx.hpp"
#include "hallforge/scalar.hpp"

namespace hallforge::dha {

using cpx::GradedObject;
using cpx::PeriodSpec;
using repcat::DimVec;
using repcat::IsoClassId;

/// Finite linear combination of graded objects. Zero coefficients are never
/// stored.
using HallVector = std::map<GradedObject, QSqrtScalar>;

void add_term(HallVector& v, const GradedObject& x, const QSqrtScalar& c);
HallVector scaled(const HallVector& v, const QSqrtScalar& c);
HallVector sum(const HallVector& x, const HallVector& y);
HallVector basis_vector(const GradedObject& x);
/// First basis element where x and y differ, if any.
std::optional<GradedObject> first_difference(const HallVector& x, const HallVector& y);

/// The algebra on graded objects for one period.
class DerivedHallAlgebra {
 public:
  DerivedHallAlgebra(const hall::HallEngine& hall, PeriodSpec period);

  const hall::HallEngine& hall() const noexcept { return hall_; }
  PeriodSpec period() const noexcept { return period_; }
  std::uint32_t q() const noexcept { return hall_.q(); }
  std::size_t vertices() const noexcept { return hall_.registry().category().quiver().vertex_count(); }

  /// Product of two basis elements, memoized.
  const HallVector& multiply(const GradedObject& a, const GradedObject& b) const;
  HallVector multiply(const HallVector& x, const HallVector& y) const;

  /// prod_i a_{Y^i} prod_i |Ext^1(Y^i, Y^{i-1})|: the invertible endomorphisms
  /// of Y in the derived category.
  mpz_class a_derived(const GradedObject& y) const;
  /// {X, Y} = prod_{i=1}^{t} |Hom(X[i], Y)|^{(-1)^i}.
  mpq_class bracket(const GradedObject& x, const GradedObject& y) const;
  /// a_Y {Y, Y}^{1/2}; odd periods only.
  QSqrtScalar a_prime(const GradedObject& y) const;

  /// q^e for integer e, as a scalar.
  QSqrtScalar q_power(long e) const { return QSqrtScalar(hall_.q_power(e)); }
  /// sqrt(q)^e.
  QSqrtScalar v_power(long e) const { return QSqrtScalar::v_power(e, q()); }

 private:
  HallVector multiply_bounded(const GradedObject& a1, const GradedObject& a2) const;
  HallVector multiply_odd(const GradedObject& a1, const GradedObject& a2) const;

  const hall::HallEngine& hall_;
  PeriodSpec period_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<GradedObject, GradedObject>, HallVector> products_;
  mutable std::map<GradedObject, QSqrtScalar> a_primes_;
};

/// Product of two bounded graded objects.
HallVector lt_mul_t0(const DerivedHallAlgebra& alg, const GradedObject& a1, const GradedObject& a2);
/// Product of two graded objects of the algebra's odd period.
HallVector lt_mul_odd(const DerivedHallAlgebra& alg, const GradedObject& a1, const GradedObject& a2);

}  // namespace hallforge::dha
