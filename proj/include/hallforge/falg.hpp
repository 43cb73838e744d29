/// \file
/// Exact linear algebra over prime fields F_p.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "hallforge/errors.hpp"

namespace hallforge::falg {

using Residue = std::uint32_t;

/// A prime field F_p. Construction rejects composite moduli.
class FieldSpec {
 public:
  explicit FieldSpec(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }

  Residue add(Residue x, Residue y) const noexcept {
    const Residue s = x + y;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue x, Residue y) const noexcept {
    return x >= y ? x - y : x + p_ - y;
  }
  Residue neg(Residue x) const noexcept { return x == 0 ? 0 : p_ - x; }
  Residue mul(Residue x, Residue y) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(x) * y % p_);
  }
  /// Multiplicative inverse; throws DivisionByZero for x = 0.
  Residue inv(Residue x) const;

  /// Reduces an arbitrary signed integer into [0, p).
  Residue reduce(std::int64_t x) const noexcept;

  bool operator==(const FieldSpec&) const = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n) noexcept;

/// Dense row-major matrix of residues. Carries no modulus; every arithmetic
/// routine takes the FieldSpec explicitly.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  FieldMatrix(std::size_t rows, std::size_t cols, std::vector<Residue> data);

  static FieldMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Residue> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<Residue>& data() const noexcept { return data_; }
  std::vector<Residue>& data() noexcept { return data_; }

  bool is_zero() const noexcept;
  FieldMatrix transpose() const;

  /// Rows [r0, r0+nr) x cols [c0, c0+nc).
  FieldMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  auto operator<=>(const FieldMatrix&) const = default;
  bool operator==(const FieldMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

FieldMatrix multiply(const FieldSpec& f, const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix add(const FieldSpec& f, const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix subtract(const FieldSpec& f, const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix scale(const FieldSpec& f, Residue s, const FieldMatrix& a);
/// [a; b] stacked vertically (same column count).
FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b);

struct RrefResult {
  FieldMatrix matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. The returned matrix keeps the input shape; rows
/// past `rank` are zero.
RrefResult rref(const FieldSpec& f, FieldMatrix m);
std::size_t rank(const FieldSpec& f, const FieldMatrix& m);
bool is_invertible(const FieldSpec& f, const FieldMatrix& m);
/// Throws DivisionByZero when m is singular.
FieldMatrix inverse(const FieldSpec& f, const FieldMatrix& m);

/// A subspace of F_p^n in canonical form: RREF basis rows with their pivot
/// columns. Two Subspace values are equal iff they span the same space.
struct Subspace {
  std::size_t ambient_dim = 0;
  FieldMatrix basis;  ///< dim x ambient_dim, reduced row echelon
  std::vector<std::size_t> pivots;

  std::size_t dim() const noexcept { return pivots.size(); }
  bool contains(const FieldSpec& f, std::span<const Residue> v) const;

  /// Coordinates of v (assumed to lie in the subspace) in the RREF basis.
  std::vector<Residue> coordinates(std::span<const Residue> v) const;

  static Subspace zero(std::size_t n);
  static Subspace full(std::size_t n);

  auto operator<=>(const Subspace&) const = default;
  bool operator==(const Subspace&) const = default;
};

/// Row space of m.
Subspace span_of_rows(const FieldSpec& f, const FieldMatrix& m);
/// Column space of m, as a subspace of F_p^{rows}.
Subspace column_space(const FieldSpec& f, const FieldMatrix& m);
/// {v : m v = 0}, of dimension cols - rank.
Subspace kernel_basis(const FieldSpec& f, const FieldMatrix& m);

/// Every subspace of F_p^n (optionally of one dimension), ordered by pivot
/// set and then by the free entries in row-major order.
std::vector<Subspace> enumerate_subspaces(const FieldSpec& f, std::size_t ambient_dim,
                                          std::optional<std::size_t> dim_filter,
                                          const Limits& limits = {});

/// q-binomial coefficient [n choose d]_q; zero when d > n.
mpz_class gaussian_binomial(std::size_t n, std::size_t d, std::uint32_t q);

/// |GL_n(F_q)| = prod_{i<n} (q^n - q^i).
mpz_class general_linear_order(std::size_t n, std::uint32_t q);

}  // namespace hallforge::falg
