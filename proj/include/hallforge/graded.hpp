/// \file
/// Graded objects: complexes with zero differential, recorded as one
/// isomorphism class per degree.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "hallforge/registry.hpp"

namespace hallforge::cpx {

using repcat::DimVec;
using repcat::IsoClassId;

/// A period: 0 for bounded complexes, otherwise an odd positive integer.
class PeriodSpec {
 public:
  /// Throws UnsupportedPeriod for negative or even positive t.
  explicit PeriodSpec(int t);
  int t() const noexcept { return t_; }
  bool bounded() const noexcept { return t_ == 0; }
  /// Degree reduced into [0, t) when periodic; unchanged when bounded.
  int reduce(int degree) const noexcept;
  bool operator==(const PeriodSpec&) const = default;

 private:
  int t_ = 0;
};

struct GradedObject {
  int t = 0;
  /// Nonzero components only, keyed by (reduced) degree.
  std::map<int, IsoClassId> parts;

  GradedObject() = default;
  explicit GradedObject(PeriodSpec period) : t(period.t()) {}

  static GradedObject stalk(PeriodSpec period, const IsoClassId& x, int degree);

  PeriodSpec period() const { return PeriodSpec(t); }
  bool is_zero() const noexcept { return parts.empty(); }
  /// Component at `degree` (the zero class of the given vertex count if absent).
  IsoClassId at(int degree, std::size_t vertices) const;
  /// Sets a component; zero classes erase the degree.
  void set(int degree, const IsoClassId& x);
  /// (X[s])^j = X^{j+s}.
  GradedObject shifted(int s) const;
  /// Sum of all component dimension vectors.
  DimVec total_dims(std::size_t vertices) const;
  /// Number of degrees between the outermost nonzero components (bounded case).
  int width() const;

  auto operator<=>(const GradedObject&) const = default;
  bool operator==(const GradedObject&) const = default;
};

/// "[k1@0, k1.1#1@2]", components in increasing degree; "[]" for zero.
std::string to_string(const GradedObject& x);
GradedObject parse_graded(const std::string& text, PeriodSpec period, std::size_t vertices);

}  // namespace hallforge::cpx
