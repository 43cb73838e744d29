#include "hallforge/scalar.hpp"

namespace hallforge::dha {

QSqrtScalar::QSqrtScalar(mpq_class a, mpq_class b, std::uint32_t q) : a_(std::move(a)), b_(std::move(b)), q_(q) {
  a_.canonicalize();
  b_.canonicalize();
  if (b_ != 0 && q_ == 0) throw InvalidField("an irrational scalar needs a prime q");
}

QSqrtScalar QSqrtScalar::v_power(long n, std::uint32_t q) {
  const unsigned long half = static_cast<unsigned long>(n < 0 ? -n : n) / 2;
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), q, half);
  mpq_class base = p;
  QSqrtScalar out = (n % 2 == 0) ? QSqrtScalar(base, 0, q) : QSqrtScalar(0, base, q);
  return n < 0 ? out.inverse() : out;
}

QSqrtScalar QSqrtScalar::sqrt_qpower(const mpq_class& x, std::uint32_t q) {
  if (x <= 0) throw NotAPureQPower("square root of the non-positive value " + x.get_str());
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  long n = 0;
  while (num % q == 0) {
    num /= q;
    ++n;
  }
  while (den % q == 0) {
    den /= q;
    --n;
  }
  if (num != 1 || den != 1)
    throw NotAPureQPower(x.get_str() + " is not a power of " + std::to_string(q));
  return v_power(n, q);
}

std::uint32_t QSqrtScalar::join_q(const QSqrtScalar& o) const {
  if (q_ != 0 && o.q_ != 0 && q_ != o.q_)
    throw IncompatibleObjects("scalars over different fields: q=" + std::to_string(q_) + " and q=" +
                              std::to_string(o.q_));
  return q_ != 0 ? q_ : o.q_;
}

QSqrtScalar QSqrtScalar::operator-() const {
  QSqrtScalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QSqrtScalar& QSqrtScalar::operator+=(const QSqrtScalar& o) {
  q_ = join_q(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QSqrtScalar& QSqrtScalar::operator-=(const QSqrtScalar& o) {
  q_ = join_q(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QSqrtScalar& QSqrtScalar::operator*=(const QSqrtScalar& o) {
  q_ = join_q(o);
  // (a + b v)(c + d v) = (ac + q bd) + (ad + bc) v
  mpq_class a = a_ * o.a_;
  if (b_ != 0 && o.b_ != 0) a += mpq_class(q_) * b_ * o.b_;
  mpq_class b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QSqrtScalar QSqrtScalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(sqrt q)");
  if (b_ == 0) {
    QSqrtScalar r = *this;
    r.a_ = 1 / a_;
    return r;
  }
  // (a - b v) / (a^2 - q b^2); the norm is nonzero because q is not a square.
  const mpq_class norm = a_ * a_ - mpq_class(q_) * b_ * b_;
  return QSqrtScalar(a_ / norm, -b_ / norm, q_);
}

QSqrtScalar& QSqrtScalar::operator/=(const QSqrtScalar& o) { return *this *= o.inverse(); }

std::string QSqrtScalar::to_string() const { return a_.get_str() + " + " + b_.get_str() + "*v"; }

QSqrtScalar QSqrtScalar::parse(const std::string& text, std::uint32_t q) {
  const auto plus = text.find(" + ");
  const auto star = text.rfind("*v");
  if (plus == std::string::npos || star == std::string::npos || star + 2 != text.size())
    throw ParseError("scalar must look like 'a + b*v': '" + text + "'");
  try {
    mpq_class a(text.substr(0, plus));
    mpq_class b(text.substr(plus + 3, star - plus - 3));
    return QSqrtScalar(a, b, q);
  } catch (const std::invalid_argument&) {
    throw ParseError("scalar must look like 'a + b*v': '" + text + "'");
  }
}

}  // namespace hallforge::dha
