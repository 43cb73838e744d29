#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "hallforge/falg.hpp"

using namespace hallforge;
using namespace hallforge::falg;

namespace {

// Vectors of F_p^n encoded as base-p integers.
std::vector<Residue> digits(std::uint32_t code, std::size_t n, std::uint32_t p) {
  std::vector<Residue> v(n);
  for (std::size_t i = n; i-- > 0;) {
    v[i] = code % p;
    code /= p;
  }
  return v;
}

std::uint32_t pow_u(std::uint32_t p, std::size_t n) {
  std::uint32_t r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= p;
  return r;
}

// The set of all vectors spanned by `gens`, by closure under addition and scaling.
std::set<std::vector<Residue>> closure(const std::vector<std::vector<Residue>>& gens, std::size_t n, std::uint32_t p) {
  std::set<std::vector<Residue>> span{std::vector<Residue>(n, 0)};
  for (const auto& g : gens) {
    std::set<std::vector<Residue>> next;
    for (const auto& s : span) {
      for (std::uint32_t c = 0; c < p; ++c) {
        std::vector<Residue> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = (s[i] + c * g[i]) % p;
        next.insert(v);
      }
    }
    span = std::move(next);
  }
  return span;
}

long det_cofactor(const std::vector<std::vector<long>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  long d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    d += (c % 2 ? -1 : 1) * m[0][c] * det_cofactor(minor);
  }
  return d;
}

FieldMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, std::uint32_t p) {
  FieldMatrix m(r, c);
  for (auto& x : m.data()) x = rng() % p;
  return m;
}

}  // namespace

TEST_CASE("field construction accepts primes only") {
  CHECK_NOTHROW(FieldSpec(2));
  CHECK_NOTHROW(FieldSpec(7));
  CHECK_THROWS_AS(FieldSpec(4), InvalidField);
  CHECK_THROWS_AS(FieldSpec(1), InvalidField);
  CHECK_THROWS_AS(FieldSpec(0), InvalidField);
}

TEST_CASE("every nonzero residue has an inverse") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const FieldSpec f(p);
    for (Residue x = 1; x < p; ++x) CHECK(f.mul(x, f.inv(x)) == 1);
    CHECK_THROWS_AS(f.inv(0), DivisionByZero);
    CHECK(f.reduce(-1) == p - 1);
  }
}

TEST_CASE("gaussian binomial counts subspaces found by brute-force spanning") {
  for (std::uint32_t p : {2u, 3u}) {
    for (std::size_t n = 0; n <= 3; ++n) {
      const std::uint32_t vectors = pow_u(p, n);
      std::map<std::size_t, std::set<std::set<std::vector<Residue>>>> spans;
      // Every subspace of dim <= 3 is spanned by some triple of vectors.
      for (std::uint32_t a = 0; a < vectors; ++a)
        for (std::uint32_t b = 0; b < vectors; ++b)
          for (std::uint32_t c = 0; c < vectors; ++c) {
            auto s = closure({digits(a, n, p), digits(b, n, p), digits(c, n, p)}, n, p);
            std::size_t d = 0;
            for (std::size_t size = s.size(); size > 1; size /= p) ++d;
            spans[d].insert(std::move(s));
          }
      for (std::size_t d = 0; d <= n; ++d) {
        CAPTURE(p);
        CAPTURE(n);
        CAPTURE(d);
        CHECK(gaussian_binomial(n, d, p) == spans[d].size());
        CHECK(enumerate_subspaces(FieldSpec(p), n, d).size() == spans[d].size());
      }
      CHECK(gaussian_binomial(n, n + 1, p) == 0);
    }
  }
}

TEST_CASE("enumerated subspaces are distinct, canonical and of the requested dimension") {
  const FieldSpec f(3);
  const auto all = enumerate_subspaces(f, 3, std::nullopt);
  std::set<Subspace> seen(all.begin(), all.end());
  CHECK(seen.size() == all.size());
  mpz_class expected = 0;
  for (std::size_t d = 0; d <= 3; ++d) expected += gaussian_binomial(3, d, 3);
  CHECK(expected == all.size());
  for (const auto& s : all) {
    CHECK(span_of_rows(f, s.basis) == s);
    CHECK(rank(f, s.basis) == s.dim());
  }
  CHECK_THROWS_AS(enumerate_subspaces(f, 7, std::nullopt), EnumerationTooLarge);
}

TEST_CASE("general linear order matches a determinant count") {
  for (std::uint32_t p : {2u, 3u}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const std::uint32_t count = pow_u(p, n * n);
      std::size_t invertible = 0, by_rank = 0;
      const FieldSpec f(p);
      for (std::uint32_t code = 0; code < count; ++code) {
        const auto entries = digits(code, n * n, p);
        std::vector<std::vector<long>> m(n, std::vector<long>(n));
        for (std::size_t i = 0; i < n * n; ++i) m[i / n][i % n] = entries[i];
        const long d = det_cofactor(m) % static_cast<long>(p);
        if (d != 0) ++invertible;
        if (is_invertible(f, FieldMatrix(n, n, entries))) ++by_rank;
      }
      CHECK(general_linear_order(n, p) == invertible);
      CHECK(by_rank == invertible);
    }
  }
}

TEST_CASE("rank equals log_p of the image size; kernel vectors are annihilated") {
  std::mt19937 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const FieldSpec f(p);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t r = 1 + rng() % 3, c = 1 + rng() % 4;
      const FieldMatrix m = random_matrix(rng, r, c, p);
      std::set<std::vector<Residue>> image;
      for (std::uint32_t code = 0; code < pow_u(p, c); ++code) {
        const auto x = digits(code, c, p);
        std::vector<Residue> y(r, 0);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < c; ++j) y[i] = (y[i] + m(i, j) * x[j]) % p;
        image.insert(y);
      }
      const std::size_t rk = rank(f, m);
      CHECK(image.size() == pow_u(p, rk));
      const Subspace ker = kernel_basis(f, m);
      CHECK(ker.dim() == c - rk);
      const FieldMatrix prod = multiply(f, m, ker.basis.transpose());
      CHECK(prod.is_zero());
      CHECK(column_space(f, m).dim() == rk);
    }
  }
}

TEST_CASE("inverse times matrix is the identity; singular matrices are rejected") {
  std::mt19937 rng(11);
  const FieldSpec f(5);
  int inverted = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const FieldMatrix m = random_matrix(rng, 3, 3, 5);
    if (is_invertible(f, m)) {
      CHECK(multiply(f, inverse(f, m), m) == FieldMatrix::identity(3));
      CHECK(multiply(f, m, inverse(f, m)) == FieldMatrix::identity(3));
      ++inverted;
    } else {
      CHECK_THROWS_AS(inverse(f, m), DivisionByZero);
    }
  }
  CHECK(inverted > 0);
  CHECK_THROWS_AS(multiply(f, FieldMatrix(2, 3), FieldMatrix(2, 3)), IncompatibleObjects);
}

TEST_CASE("subspace coordinates reconstruct their vector") {
  const FieldSpec f(3);
  for (const auto& s : enumerate_subspaces(f, 3, 2)) {
    for (std::uint32_t a = 0; a < 3; ++a) {
      for (std::uint32_t b = 0; b < 3; ++b) {
        std::vector<Residue> v(3);
        for (std::size_t i = 0; i < 3; ++i) v[i] = (a * s.basis(0, i) + b * s.basis(1, i)) % 3;
        CHECK(s.contains(f, v));
        const auto c = s.coordinates(v);
        CHECK(c == std::vector<Residue>{a, b});
      }
    }
  }
}
