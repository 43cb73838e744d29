/// \file
/// Exact arithmetic in Q(v), v = sqrt(q), for a prime q.

#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "hallforge/errors.hpp"

namespace hallforge::dha {

/// a + b*v with rational a, b. A value with b = 0 may leave q unset (0) and
/// then combines with any ambient q.
class QSqrtScalar {
 public:
  QSqrtScalar() = default;
  QSqrtScalar(mpq_class a) : a_(std::move(a)) {}  // NOLINT: rationals embed implicitly
  QSqrtScalar(long a) : a_(a) {}                  // NOLINT
  QSqrtScalar(mpq_class a, mpq_class b, std::uint32_t q);

  /// v itself.
  static QSqrtScalar v(std::uint32_t q) { return QSqrtScalar(0, 1, q); }
  /// v^n for any integer n.
  static QSqrtScalar v_power(long n, std::uint32_t q);
  /// The square root of x, which must be q^n for an integer n; the result is
  /// v^n. Anything else throws NotAPureQPower.
  static QSqrtScalar sqrt_qpower(const mpq_class& x, std::uint32_t q);

  const mpq_class& a() const noexcept { return a_; }
  const mpq_class& b() const noexcept { return b_; }
  std::uint32_t q() const noexcept { return q_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QSqrtScalar operator-() const;
  QSqrtScalar& operator+=(const QSqrtScalar& o);
  QSqrtScalar& operator-=(const QSqrtScalar& o);
  QSqrtScalar& operator*=(const QSqrtScalar& o);
  QSqrtScalar& operator/=(const QSqrtScalar& o);
  /// Throws DivisionByZero for 0.
  QSqrtScalar inverse() const;

  friend QSqrtScalar operator+(QSqrtScalar x, const QSqrtScalar& y) { return x += y; }
  friend QSqrtScalar operator-(QSqrtScalar x, const QSqrtScalar& y) { return x -= y; }
  friend QSqrtScalar operator*(QSqrtScalar x, const QSqrtScalar& y) { return x *= y; }
  friend QSqrtScalar operator/(QSqrtScalar x, const QSqrtScalar& y) { return x /= y; }
  /// Componentwise equality.
  friend bool operator==(const QSqrtScalar& x, const QSqrtScalar& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  /// "a + b*v", both parts as canonical rationals.
  std::string to_string() const;
  /// Inverse of to_string.
  static QSqrtScalar parse(const std::string& text, std::uint32_t q);

 private:
  std::uint32_t join_q(const QSqrtScalar& o) const;

  mpq_class a_ = 0;
  mpq_class b_ = 0;
  std::uint32_t q_ = 0;
};

}  // namespace hallforge::dha
