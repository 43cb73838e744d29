#include "hallforge/falg.hpp"

#include <algorithm>
#include <string>

namespace hallforge::falg {

bool is_prime(std::uint32_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec::FieldSpec(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) {
    throw InvalidField("modulus " + std::to_string(p) + " is not prime");
  }
}

Residue FieldSpec::inv(Residue x) const {
  if (x % p_ == 0) throw DivisionByZero("inverse of 0 in F_" + std::to_string(p_));
  // Fermat: x^(p-2)
  std::uint64_t result = 1;
  std::uint64_t base = x % p_;
  std::uint32_t e = p_ - 2;
  while (e > 0) {
    if (e & 1u) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

Residue FieldSpec::reduce(std::int64_t x) const noexcept {
  const std::int64_t m = static_cast<std::int64_t>(p_);
  std::int64_t r = x % m;
  if (r < 0) r += m;
  return static_cast<Residue>(r);
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::vector<Residue> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw IncompatibleObjects("matrix data size does not match shape");
  }
}

FieldMatrix FieldMatrix::identity(std::size_t n) {
  FieldMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool FieldMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

FieldMatrix FieldMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  FieldMatrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

FieldMatrix multiply(const FieldSpec& f, const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.rows()) throw IncompatibleObjects("matrix product shape mismatch");
  FieldMatrix c(a.rows(), b.cols());
  const std::uint64_t p = f.p();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += static_cast<std::uint64_t>(a(i, k)) * b(k, j);
      c(i, j) = static_cast<Residue>(acc % p);
    }
  }
  return c;
}

FieldMatrix add(const FieldSpec& f, const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw IncompatibleObjects("matrix sum shape mismatch");
  FieldMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = f.add(a.data()[i], b.data()[i]);
  return c;
}

FieldMatrix subtract(const FieldSpec& f, const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw IncompatibleObjects("matrix difference shape mismatch");
  FieldMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = f.sub(a.data()[i], b.data()[i]);
  return c;
}

FieldMatrix scale(const FieldSpec& f, Residue s, const FieldMatrix& a) {
  FieldMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = f.mul(s, a.data()[i]);
  return c;
}

FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.cols()) throw IncompatibleObjects("vstack column mismatch");
  std::vector<Residue> data = a.data();
  data.insert(data.end(), b.data().begin(), b.data().end());
  return FieldMatrix(a.rows() + b.rows(), a.cols(), std::move(data));
}

RrefResult rref(const FieldSpec& f, FieldMatrix m) {
  RrefResult out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    }
    const Residue inv = f.inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Residue factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = row;
  out.matrix = std::move(m);
  return out;
}

std::size_t rank(const FieldSpec& f, const FieldMatrix& m) { return rref(f, m).rank; }

bool is_invertible(const FieldSpec& f, const FieldMatrix& m) {
  return m.rows() == m.cols() && rank(f, m) == m.rows();
}

FieldMatrix inverse(const FieldSpec& f, const FieldMatrix& m) {
  if (m.rows() != m.cols()) throw IncompatibleObjects("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  FieldMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  RrefResult red = rref(f, std::move(aug));
  if (red.rank < n || (n > 0 && red.pivots[n - 1] != n - 1)) {
    throw DivisionByZero("matrix is singular");
  }
  return red.matrix.block(0, n, n, n);
}

bool Subspace::contains(const FieldSpec& f, std::span<const Residue> v) const {
  // Reduce v against the RREF rows; v lies in the span iff the residue is 0.
  std::vector<Residue> w(v.begin(), v.end());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const Residue coef = w[pivots[i]];
    if (coef == 0) continue;
    for (std::size_t c = 0; c < ambient_dim; ++c) w[c] = f.sub(w[c], f.mul(coef, basis(i, c)));
  }
  return std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; });
}

std::vector<Residue> Subspace::coordinates(std::span<const Residue> v) const {
  std::vector<Residue> c(pivots.size());
  for (std::size_t i = 0; i < pivots.size(); ++i) c[i] = v[pivots[i]];
  return c;
}

Subspace Subspace::zero(std::size_t n) { return Subspace{n, FieldMatrix(0, n), {}}; }

Subspace Subspace::full(std::size_t n) {
  Subspace s{n, FieldMatrix::identity(n), {}};
  for (std::size_t i = 0; i < n; ++i) s.pivots.push_back(i);
  return s;
}

Subspace span_of_rows(const FieldSpec& f, const FieldMatrix& m) {
  RrefResult red = rref(f, m);
  return Subspace{m.cols(), red.matrix.block(0, 0, red.rank, m.cols()), std::move(red.pivots)};
}

Subspace column_space(const FieldSpec& f, const FieldMatrix& m) {
  return span_of_rows(f, m.transpose());
}

Subspace kernel_basis(const FieldSpec& f, const FieldMatrix& m) {
  const std::size_t n = m.cols();
  RrefResult red = rref(f, m);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : red.pivots) is_pivot[c] = true;
  FieldMatrix gens(n - red.rank, n);
  std::size_t g = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    gens(g, free) = 1;
    for (std::size_t i = 0; i < red.rank; ++i) gens(g, red.pivots[i]) = f.neg(red.matrix(i, free));
    ++g;
  }
  return span_of_rows(f, gens);
}

namespace {

void enumerate_with_pivots(const FieldSpec& f, std::size_t n, const std::vector<std::size_t>& pivots,
                           std::vector<Subspace>& out) {
  const std::size_t d = pivots.size();
  // Free slots: row i, column c > pivots[i], c not a pivot column.
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t c = pivots[i] + 1; c < n; ++c)
      if (!is_pivot[c]) slots.emplace_back(i, c);

  std::vector<Residue> digits(slots.size(), 0);
  while (true) {
    FieldMatrix basis(d, n);
    for (std::size_t i = 0; i < d; ++i) basis(i, pivots[i]) = 1;
    for (std::size_t s = 0; s < slots.size(); ++s) basis(slots[s].first, slots[s].second) = digits[s];
    out.push_back(Subspace{n, std::move(basis), pivots});
    // Odometer, last slot fastest.
    std::size_t k = slots.size();
    while (k > 0) {
      --k;
      if (++digits[k] < f.p()) break;
      digits[k] = 0;
      if (k == 0) return;
    }
    if (slots.empty()) return;
  }
}

void enumerate_pivot_sets(const FieldSpec& f, std::size_t n, std::size_t d, std::size_t start,
                          std::vector<std::size_t>& current, std::vector<Subspace>& out) {
  if (current.size() == d) {
    enumerate_with_pivots(f, n, current, out);
    return;
  }
  for (std::size_t c = start; c + (d - current.size()) <= n; ++c) {
    current.push_back(c);
    enumerate_pivot_sets(f, n, d, c + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Subspace> enumerate_subspaces(const FieldSpec& f, std::size_t ambient_dim,
                                          std::optional<std::size_t> dim_filter,
                                          const Limits& limits) {
  if (ambient_dim > limits.max_ambient_dim || f.p() > limits.max_prime) {
    throw EnumerationTooLarge(
        "max_ambient_dim",
        "subspace enumeration of F_" + std::to_string(f.p()) + "^" + std::to_string(ambient_dim) +
            " exceeds bound (ambient <= " + std::to_string(limits.max_ambient_dim) +
            ", p <= " + std::to_string(limits.max_prime) + ")");
  }
  std::vector<Subspace> out;
  for (std::size_t d = 0; d <= ambient_dim; ++d) {
    if (dim_filter && *dim_filter != d) continue;
    std::vector<std::size_t> current;
    enumerate_pivot_sets(f, ambient_dim, d, 0, current, out);
  }
  return out;
}

mpz_class gaussian_binomial(std::size_t n, std::size_t d, std::uint32_t q) {
  if (d > n) return 0;
  mpz_class num = 1;
  mpz_class den = 1;
  mpz_class qq = q;
  for (std::size_t i = 0; i < d; ++i) {
    mpz_class a, b;
    mpz_pow_ui(a.get_mpz_t(), qq.get_mpz_t(), n - i);
    mpz_pow_ui(b.get_mpz_t(), qq.get_mpz_t(), i + 1);
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

mpz_class general_linear_order(std::size_t n, std::uint32_t q) {
  mpz_class qq = q;
  mpz_class qn;
  mpz_pow_ui(qn.get_mpz_t(), qq.get_mpz_t(), n);
  mpz_class result = 1;
  mpz_class qi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    result *= qn - qi;
    qi *= qq;
  }
  return result;
}

}  // namespace hallforge::falg
