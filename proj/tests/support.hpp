// Shared fixtures and brute-force oracles for the unit tests. Nothing here
// calls the linear algebra of the library under test.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "hallforge/repcat.hpp"

namespace support {

using hallforge::falg::FieldMatrix;
using hallforge::falg::Residue;
using hallforge::repcat::Arrow;
using hallforge::repcat::DimVec;
using hallforge::repcat::Quiver;
using hallforge::repcat::Rep;

inline Quiver a1() { return Quiver({"1"}, {}); }
inline Quiver a2() { return Quiver({"1", "2"}, {Arrow{0, 1, "a"}}); }
inline Quiver a3() { return Quiver({"1", "2", "3"}, {Arrow{0, 1, "a"}, Arrow{1, 2, "b"}}); }

using Mat = std::vector<std::vector<long>>;

inline Mat to_mat(const FieldMatrix& m) {
  Mat out(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline long mod(long x, long p) { return ((x % p) + p) % p; }

inline long pow_mod(long b, long e, long p) {
  long r = 1;
  for (; e > 0; --e) r = r * b % p;
  return r;
}

/// Gaussian elimination written out directly.
inline std::size_t naive_rank(Mat m, long p) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && mod(m[piv][c], p) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const long inv = pow_mod(mod(m[r][c], p), p - 2, p);
    for (auto& x : m[r]) x = mod(x * inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const long f = mod(m[i][c], p);
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = mod(m[i][j] - f * m[r][j], p);
    }
    ++r;
  }
  return r;
}

inline Mat mul(const Mat& a, const Mat& b, std::size_t rows, std::size_t inner, std::size_t cols, long p) {
  Mat out(rows, std::vector<long>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < cols; ++j) out[i][j] = mod(out[i][j] + a[i][k] * b[k][j], p);
  return out;
}

/// [top; bottom] or [left | right].
inline Mat vcat(const Mat& a, const Mat& b) {
  Mat out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}
inline Mat hcat(const Mat& a, const Mat& b) {
  Mat out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i].insert(out[i].end(), b[i].begin(), b[i].end());
  return out;
}

/// Every matrix of the given shape, in base-p order.
inline void for_each_matrix(std::size_t rows, std::size_t cols, long p, const std::function<void(const Mat&)>& f) {
  Mat m(rows, std::vector<long>(cols, 0));
  const std::size_t n = rows * cols;
  std::vector<long> digits(n, 0);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) m[i / cols][i % cols] = digits[i];
    f(m);
    std::size_t k = n;
    while (k > 0 && ++digits[k - 1] == p) digits[--k] = 0;
    if (k == 0) return;
  }
}

using Tuple = std::vector<Mat>;

/// Every tuple of matrices of the given shapes.
inline void for_each_tuple(const std::vector<std::pair<std::size_t, std::size_t>>& shapes, long p,
                           const std::function<void(const Tuple&)>& f) {
  Tuple current(shapes.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == shapes.size()) {
      f(current);
      return;
    }
    for_each_matrix(shapes[k].first, shapes[k].second, p, [&](const Mat& m) {
      current[k] = m;
      rec(k + 1);
    });
  };
  rec(0);
}

/// All families (f_v) with f_dst M_a = N_a f_src, by exhaustive search.
inline std::vector<Tuple> brute_homs(const Quiver& q, const Rep& m, const Rep& n, long p) {
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    shapes.emplace_back(static_cast<std::size_t>(n.dims[v]), static_cast<std::size_t>(m.dims[v]));
  std::vector<Tuple> out;
  for_each_tuple(shapes, p, [&](const Tuple& f) {
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
      const auto& a = q.arrows()[k];
      const auto s = static_cast<std::size_t>(m.dims[a.src]), t = static_cast<std::size_t>(m.dims[a.dst]);
      const auto ns = static_cast<std::size_t>(n.dims[a.src]), nt = static_cast<std::size_t>(n.dims[a.dst]);
      if (mul(f[a.dst], to_mat(m.maps[k]), nt, t, s, p) != mul(to_mat(n.maps[k]), f[a.src], nt, ns, s, p)) return;
    }
    out.push_back(f);
  });
  return out;
}

inline bool all_invertible(const Tuple& f, long p) {
  for (const auto& m : f)
    if (naive_rank(m, p) != m.size() || (!m.empty() && m[0].size() != m.size())) return false;
  return true;
}

inline std::size_t brute_aut(const Quiver& q, const Rep& m, long p) {
  std::size_t count = 0;
  for (const auto& f : brute_homs(q, m, m, p))
    if (all_invertible(f, p)) ++count;
  return count;
}

inline bool brute_isomorphic(const Quiver& q, const Rep& m, const Rep& n, long p) {
  if (m.dims != n.dims) return false;
  for (const auto& f : brute_homs(q, m, n, p))
    if (all_invertible(f, p)) return true;
  return false;
}

/// Complete invariant of a representation of 1 -> 2 (or of one vertex):
/// the dimension vector and the rank of the arrow map.
using A2Invariant = std::tuple<int, int, std::size_t>;

inline A2Invariant a2_invariant(const Rep& r, long p) {
  if (r.dims.size() == 1) return {r.dims[0], 0, 0};
  return {r.dims[0], r.dims[1], naive_rank(to_mat(r.maps[0]), p)};
}

/// Invariants of ker f and coker f for f : B -> A on 1 -> 2 (or one vertex).
inline std::pair<A2Invariant, A2Invariant> a2_ker_coker(const Rep& b, const Rep& a, const Tuple& f, long p) {
  if (b.dims.size() == 1) {
    const int r = static_cast<int>(naive_rank(f[0], p));
    return {{b.dims[0] - r, 0, 0}, {a.dims[0] - r, 0, 0}};
  }
  const auto r1 = naive_rank(f[0], p), r2 = naive_rank(f[1], p);
  const Mat mb = to_mat(b.maps[0]), ma = to_mat(a.maps[0]);
  const std::size_t ker_rank = b.dims[0] == 0 ? 0 : naive_rank(vcat(f[0], mb), p) - r1;
  const std::size_t coker_rank = a.dims[1] == 0 ? 0 : naive_rank(hcat(ma, f[1]), p) - r2;
  return {{b.dims[0] - static_cast<int>(r1), b.dims[1] - static_cast<int>(r2), ker_rank},
          {a.dims[0] - static_cast<int>(r1), a.dims[1] - static_cast<int>(r2), coker_rank}};
}

inline mpz_class q_binomial(long n, long k, long q) {
  if (k < 0 || k > n) return 0;
  mpz_class num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    mpz_class a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), q, n - i);
    mpz_ui_pow_ui(b.get_mpz_t(), q, i + 1);
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

inline mpz_class gl_order(long n, long q) {
  mpz_class out = 1;
  for (long i = 0; i < n; ++i) {
    mpz_class a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), q, n);
    mpz_ui_pow_ui(b.get_mpz_t(), q, i);
    out *= a - b;
  }
  return out;
}

}  // namespace support
