/// \file
/// Verification routines: associativity, generator relations, the period-1
/// cone-counting oracle, agreement between independent routes, and the
/// exhaustive sweeps that drive them.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hallforge/rewrite.hpp"

namespace hallforge::dha {

struct Comparison {
  bool ok = true;
  HallVector lhs;
  HallVector rhs;
  std::optional<GradedObject> first_mismatch;
  nlohmann::json note;
};

Comparison compare(HallVector lhs, HallVector rhs);

/// (A B) C against A (B C).
Comparison assoc_check(const DerivedHallAlgebra& alg, const GradedObject& a, const GradedObject& b,
                       const GradedObject& c);

/// F^L_{AB} at period 1 from cone counting in the category of complexes:
/// |Hom(A, B[1])_{L[1]}| {A, B[1]}^{1/2} a'_L / (a'_A a'_B).
QSqrtScalar dht_constant_oracle_t1(const cpx::ComplexCategory& ct, const DerivedHallAlgebra& alg,
                                   const GradedObject& a, const GradedObject& b, const GradedObject& l);
/// sum_L F^L_{AB} [L] over every L whose dimension vector fits under A + B.
HallVector dht_product_oracle_t1(const cpx::ComplexCategory& ct, const DerivedHallAlgebra& alg,
                                 const GradedObject& a, const GradedObject& b);

enum class RelationFamily { dh0_43, dh0_44, dh0_45, dh1_re1, dh3_r1, dh3_r2, dht_r3 };

std::string to_string(RelationFamily f);
RelationFamily parse_relation_family(const std::string& name);
/// Families that apply to the given period.
std::vector<RelationFamily> families_for_period(int t);

/// Generators Z_A^{[i]} and Z_B^{[j]}; which of i, j matter depends on the
/// family (see relation_check).
struct RelationParams {
  IsoClassId a;
  IsoClassId b;
  int i = 0;
  int j = 0;
};

/// Instantiates one relation and evaluates both sides through the product.
///   dh0_43  Z_A^{[i]} Z_B^{[i]}             = sum_C g^C_{AB} Z_C^{[i]}
///   dh0_44  Z_B^{[i]} Z_A^{[i+1]}           = sum gamma^{MN}_{AB} <N,M>^{-1} Z_N^{[i+1]} Z_M^{[i]}
///   dh0_45  Z_B^{[i]} Z_A^{[j]}, j > i+1     = <A,B>^{(-1)^{j-i}} Z_A^{[j]} Z_B^{[i]}
///   dh1_re1 Z_A Z_B (period 1)              = sum_C |Hom(Z_A,Z_B)_{Z_C}| (|Hom||Ext|)^{-1/2} a'_C/(a'_A a'_B) Z_C
///   dh3_r1  Z_A^{[i]} Z_B^{[i]}             = sum_C g^C_{AB} <B,A>^{-1/2} Z_C^{[i]}
///   dh3_r2  Z_B^{[i]} Z_A^{[i+1]}           = sum gamma^{MN}_{AB} v^e Z_N^{[i+1]} Z_M^{[i]}
///   dht_r3  Z_A^{[i]} Z_B^{[j]}, 2 <= j-i <= t-2 = ((A,B)^{(-1)^{j-i}})^{1/2} Z_B^{[j]} Z_A^{[i]}
/// with (A,B) = <A,B><B,A>. The period-1 family needs `ct`.
Comparison relation_check(RelationFamily family, const RelationParams& params, const DerivedHallAlgebra& alg,
                          const cpx::ComplexCategory* ct = nullptr);

/// lt_mul_t0 against rewriting of the concatenated stalk decompositions.
Comparison crosscheck_t0(const DerivedHallAlgebra& alg, const GradedObject& a, const GradedObject& b);
/// lt_mul_odd against the cone-counting oracle.
Comparison crosscheck_t1(const cpx::ComplexCategory& ct, const DerivedHallAlgebra& alg, const GradedObject& a,
                         const GradedObject& b);

/// prod_{i=0}^{t-1} |Hom_{D_t}(A[i], B)|^{(-1)^i}.
mpq_class alt_hom_via_counts(const hall::HallEngine& hall, const GradedObject& a, const GradedObject& b);

// Domains for exhaustive sweeps.

/// Nonzero classes whose dimension vector fits in `box`.
std::vector<IsoClassId> classes_in_box(const repcat::ClassRegistry& reg, const DimVec& box);
/// Nonzero classes of total dimension at most n.
std::vector<IsoClassId> classes_up_to_total(const repcat::ClassRegistry& reg, int n);
/// Bounded graded objects supported in [lo, hi] with width at most max_width
/// and every component from `classes`. Includes the zero object.
std::vector<GradedObject> bounded_objects(const std::vector<IsoClassId>& classes, int lo, int hi, int max_width);
/// Periodic graded objects whose component dimensions sum to at most n.
/// Includes the zero object.
std::vector<GradedObject> periodic_objects(const repcat::ClassRegistry& reg, PeriodSpec period, int n);

struct SweepReport {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::vector<nlohmann::json> counterexamples;
  nlohmann::json notes = nlohmann::json::object();
  bool ok() const { return checked == passed; }
  nlohmann::json to_json() const;
};

nlohmann::json to_json(const HallVector& v);
nlohmann::json to_json(const Comparison& c);

/// Records one comparison; counterexamples are kept up to `keep`.
void record(SweepReport& report, const nlohmann::json& label, const Comparison& c, std::size_t keep = 20);

/// Green's formula for every quadruple (A, B, A', B') with
/// dims A + dims B = dims A' + dims B' = d for each d in `totals`.
SweepReport green_sweep(const hall::HallEngine& hall, const std::vector<DimVec>& totals);
/// sum_C |Ext^1(A,B)_C| = |Ext^1(A,B)| for all pairs from `classes`.
SweepReport homological_sweep(const hall::HallEngine& hall, const std::vector<IsoClassId>& classes);
/// alt_hom_via_counts against alt_hom_product for all pairs from `objects`.
SweepReport alt_hom_sweep(const hall::HallEngine& hall, const std::vector<GradedObject>& objects);
SweepReport assoc_sweep(const DerivedHallAlgebra& alg, const std::vector<GradedObject>& objects);
/// Every applicable family of the algebra's period over all generator pairs.
SweepReport relation_sweep(const DerivedHallAlgebra& alg, const std::vector<IsoClassId>& classes,
                           const cpx::ComplexCategory* ct, const std::vector<RelationFamily>& families);

}  // namespace hallforge::dha
