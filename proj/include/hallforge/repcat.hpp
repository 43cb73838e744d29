/// \file
/// Finite-dimensional representations of a quiver over F_p: the hereditary
/// abelian category every Hall-algebra computation runs in.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include "json.hpp"

#include "hallforge/falg.hpp"

namespace hallforge::repcat {

using falg::FieldMatrix;
using falg::FieldSpec;
using falg::Subspace;

/// Per-vertex dimensions. Also serves as the class of a representation in
/// the Grothendieck group.
struct DimVec {
  std::vector<int> v;

  DimVec() = default;
  explicit DimVec(std::vector<int> values) : v(std::move(values)) {}
  static DimVec zeros(std::size_t n) { return DimVec(std::vector<int>(n, 0)); }

  std::size_t size() const noexcept { return v.size(); }
  int operator[](std::size_t i) const { return v[i]; }
  int& operator[](std::size_t i) { return v[i]; }
  int total() const noexcept;
  bool is_zero() const noexcept { return total() == 0; }
  bool nonnegative() const noexcept;
  /// Componentwise <=.
  bool fits_in(const DimVec& other) const;

  DimVec operator+(const DimVec& o) const;
  DimVec operator-(const DimVec& o) const;

  auto operator<=>(const DimVec&) const = default;
  bool operator==(const DimVec&) const = default;

  std::string to_string() const;
};

/// Every e with 0 <= e <= d componentwise, in lexicographic order.
std::vector<DimVec> sub_dimvecs(const DimVec& d);
/// Every dimension vector of the given length whose entries sum to at most n.
std::vector<DimVec> dimvecs_up_to_total(std::size_t vertices, int n);

struct Arrow {
  std::size_t src = 0;
  std::size_t dst = 0;
  std::string label;
  bool operator==(const Arrow&) const = default;
};

class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t vertex_index(const std::string& label) const;

  /// Canonical JSON form used for fingerprints.
  nlohmann::json to_json() const;
  static Quiver from_json(const nlohmann::json& j);

  bool operator==(const Quiver&) const = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

/// Returns q if it has no directed cycle; otherwise throws NotHereditarySetup
/// naming the cycle. Loops count as cycles.
Quiver validate_quiver(const Quiver& q);
/// Topological order of an acyclic quiver.
std::vector<std::size_t> topological_order(const Quiver& q);

/// A representation: one matrix (dims[dst] x dims[src]) per arrow.
struct Rep {
  DimVec dims;
  std::vector<FieldMatrix> maps;

  auto operator<=>(const Rep&) const = default;
  bool operator==(const Rep&) const = default;
};

/// A morphism of representations: one matrix per vertex.
using Morphism = std::vector<FieldMatrix>;

struct HomSpace {
  std::size_t dimension = 0;
  std::vector<Morphism> basis;
};

struct SubQuotient {
  Rep sub;
  Rep quot;
};

/// The category Rep(Q) over F_p. The quiver is not required to be acyclic
/// here: the complex module reuses these routines on quivers with loops.
class RepCategory {
 public:
  RepCategory(Quiver quiver, FieldSpec field, Limits limits = {});

  const Quiver& quiver() const noexcept { return quiver_; }
  const FieldSpec& field() const noexcept { return field_; }
  const Limits& limits() const noexcept { return limits_; }
  std::uint32_t q() const noexcept { return field_.p(); }

  Rep zero_rep(const DimVec& dims) const;
  /// Throws IncompatibleObjects when shapes do not match the quiver.
  void check(const Rep& m) const;

  HomSpace hom_basis(const Rep& m, const Rep& n) const;
  std::size_t hom_dim(const Rep& m, const Rep& n) const;
  /// dim Ext^1 as the cokernel of the standard map
  /// (+)_v Hom(M_v, N_v) -> (+)_arrows Hom(M_s, N_t).
  std::size_t ext1_dim(const Rep& m, const Rep& n) const;

  bool is_morphism(const Rep& m, const Rep& n, const Morphism& f) const;
  bool is_iso_morphism(const Morphism& f) const;

  /// Decided by exhaustive search of Hom(m, n) after invariant prefilters.
  bool is_isomorphic(const Rep& m, const Rep& n) const;
  /// Number of automorphisms, by enumerating End(m).
  mpz_class aut_count(const Rep& m) const;

  Rep direct_sum(const Rep& m, const Rep& n) const;

  /// Restriction to the per-vertex subspaces `u` and the induced quotient.
  /// Throws NotASubobject when u is not closed under the arrow maps.
  SubQuotient quotient_by_subrep(const Rep& c, const std::vector<Subspace>& u) const;
  bool is_subrep(const Rep& c, const std::vector<Subspace>& u) const;

  /// Calls `visit` for every subrepresentation of c with dimension vector e.
  void for_each_subrep(const Rep& c, const DimVec& e,
                       const std::function<void(const std::vector<Subspace>&)>& visit) const;

  /// Calls `visit` on every element of a Hom space given by a basis.
  void for_each_element(const Rep& m, const Rep& n, const HomSpace& space,
                        const std::function<bool(const Morphism&)>& visit) const;

 private:
  FieldMatrix intertwiner_system(const Rep& m, const Rep& n) const;
  void check_pair(const Rep& m, const Rep& n) const;

  Quiver quiver_;
  FieldSpec field_;
  Limits limits_;
};

}  // namespace hallforge::repcat
