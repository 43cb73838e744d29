/// \file
/// Isomorphism classes of representations, one complete list per dimension
/// vector.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hallforge/repcat.hpp"

namespace hallforge::repcat {

/// Class number `index` among the classes of dimension vector `dims`.
/// Index 0 is always the class of the all-zero tuple.
struct IsoClassId {
  DimVec dims;
  std::uint32_t index = 0;

  bool is_zero() const noexcept { return dims.is_zero(); }
  auto operator<=>(const IsoClassId&) const = default;
  bool operator==(const IsoClassId&) const = default;
};

/// "k" followed by the dims joined with '.', then "#index" when index > 0.
std::string to_string(const IsoClassId& id);
/// Inverse of to_string; `vertices` is the expected vector length.
IsoClassId parse_class_id(const std::string& text, std::size_t vertices);

struct ClassInfo {
  IsoClassId id;
  Rep rep;               ///< canonical representative
  std::uint64_t code = 0;
  mpz_class aut;         ///< |Aut(rep)|
  mpz_class orbit_size;  ///< number of tuples in the class
};

struct VarietyTable {
  DimVec dims;
  std::vector<ClassInfo> classes;
  /// Class index for every tuple code, -1 for tuples violating the relation.
  /// Empty when the classes were imported rather than computed.
  std::vector<std::int32_t> class_of_code;
};

/// Lazily computed, thread-safe table of isomorphism classes.
///
/// Every tuple of arrow matrices is encoded as an integer in base p, first
/// entry most significant. The classes of a dimension vector are the orbits
/// of prod_v GL(d_v) on the tuples satisfying `relation`; each orbit is found
/// by union-find over a generating set of the group, and its canonical
/// representative is its smallest code.
class ClassRegistry {
 public:
  using Relation = std::function<bool(const Rep&)>;

  explicit ClassRegistry(RepCategory category, Relation relation = {});

  const RepCategory& category() const noexcept { return category_; }

  const std::vector<ClassInfo>& classes(const DimVec& d) const;
  const ClassInfo& info(const IsoClassId& id) const;
  const Rep& representative(const IsoClassId& id) const { return info(id).rep; }
  const mpz_class& aut(const IsoClassId& id) const { return info(id).aut; }
  IsoClassId zero_class() const;

  IsoClassId classify(const Rep& m) const;

  std::uint64_t encode(const Rep& m) const;
  Rep decode(const DimVec& d, std::uint64_t code) const;
  /// Number of arrow-matrix tuples of shape d.
  mpz_class variety_size(const DimVec& d) const;

  /// Installs a class list computed elsewhere (e.g. loaded from a cache).
  /// Ignored when the dimension vector is already present.
  void import_classes(const DimVec& d, std::vector<ClassInfo> classes);
  /// Dimension vectors with a complete class list, in order.
  std::vector<DimVec> covered() const;

 private:
  const VarietyTable& table(const DimVec& d) const;
  std::unique_ptr<VarietyTable> build(const DimVec& d) const;

  RepCategory category_;
  Relation relation_;
  mutable std::shared_mutex mutex_;
  mutable std::map<DimVec, std::unique_ptr<VarietyTable>> tables_;
};

}  // namespace hallforge::repcat
