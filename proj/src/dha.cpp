#include "hallforge/dha.hpp"

#include <algorithm>
#include <iterator>
#include <set>

namespace hallforge::dha {

void add_term(HallVector& v, const GradedObject& x, const QSqrtScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = v.emplace(x, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

HallVector scaled(const HallVector& v, const QSqrtScalar& c) {
  HallVector out;
  for (const auto& [x, coef] : v) add_term(out, x, coef * c);
  return out;
}

HallVector sum(const HallVector& x, const HallVector& y) {
  HallVector out = x;
  for (const auto& [g, c] : y) add_term(out, g, c);
  return out;
}

HallVector basis_vector(const GradedObject& x) { return HallVector{{x, QSqrtScalar(1)}}; }

std::optional<GradedObject> first_difference(const HallVector& x, const HallVector& y) {
  std::set<GradedObject> keys;
  for (const auto& [g, c] : x) keys.insert(g);
  for (const auto& [g, c] : y) keys.insert(g);
  for (const GradedObject& g : keys) {
    auto ix = x.find(g);
    auto iy = y.find(g);
    if (ix == x.end() || iy == y.end() || !(ix->second == iy->second)) return g;
  }
  return std::nullopt;
}

namespace {

using Dist = std::map<IsoClassId, mpq_class>;

mpq_class ratio(const mpz_class& num, const mpz_class& den) {
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

// Classes occurring as quotients (resp. subobjects) of c.
std::set<IsoClassId> quotient_classes(const hall::HallEngine& h, const IsoClassId& c) {
  std::set<IsoClassId> out;
  for (const auto& [key, g] : h.subobject_table(c)) out.insert(key.first);
  return out;
}

std::set<IsoClassId> sub_classes(const hall::HallEngine& h, const IsoClassId& c) {
  std::set<IsoClassId> out;
  for (const auto& [key, g] : h.subobject_table(c)) out.insert(key.second);
  return out;
}

std::vector<IsoClassId> intersect(const std::set<IsoClassId>& a, const std::set<IsoClassId>& b) {
  std::vector<IsoClassId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Tensor product of per-degree distributions.
void expand(const std::vector<std::pair<int, Dist>>& per_degree, std::size_t k, GradedObject& current,
            const mpq_class& coef, std::map<GradedObject, mpq_class>& out) {
  if (k == per_degree.size()) {
    out[current] += coef;
    return;
  }
  const auto& [degree, dist] = per_degree[k];
  for (const auto& [x, c] : dist) {
    GradedObject next = current;
    next.set(degree, x);
    expand(per_degree, k + 1, next, coef * c, out);
  }
}

// Iterates over all tuples choosing one element of choices[k] per slot.
template <class Visit>
void for_each_choice(const std::vector<std::vector<IsoClassId>>& choices, Visit visit) {
  std::vector<std::size_t> idx(choices.size(), 0);
  for (const auto& c : choices)
    if (c.empty()) return;
  while (true) {
    visit(idx);
    std::size_t k = choices.size();
    while (k > 0) {
      --k;
      if (++idx[k] < choices[k].size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (choices.empty()) return;
  }
}

}  // namespace

DerivedHallAlgebra::DerivedHallAlgebra(const hall::HallEngine& hall, PeriodSpec period)
    : hall_(hall), period_(period) {}

const HallVector& DerivedHallAlgebra::multiply(const GradedObject& a, const GradedObject& b) const {
  const auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(mutex_);
    auto it = products_.find(key);
    if (it != products_.end()) return it->second;
  }
  if (a.t != period_.t() || b.t != period_.t())
    throw IncompatibleObjects("graded object period does not match the algebra");
  HallVector value = period_.bounded() ? multiply_bounded(a, b) : multiply_odd(a, b);
  std::lock_guard lock(mutex_);
  auto [it, inserted] = products_.emplace(key, std::move(value));
  return it->second;
}

HallVector DerivedHallAlgebra::multiply(const HallVector& x, const HallVector& y) const {
  HallVector out;
  for (const auto& [gx, cx] : x)
    for (const auto& [gy, cy] : y)
      for (const auto& [g, c] : multiply(gx, gy)) add_term(out, g, cx * cy * c);
  return out;
}

HallVector DerivedHallAlgebra::multiply_bounded(const GradedObject& a1, const GradedObject& a2) const {
  const std::size_t nv = vertices();
  const IsoClassId zero = hall_.registry().zero_class();
  std::set<int> support;
  for (const auto& [d, x] : a1.parts) support.insert(d);
  for (const auto& [d, x] : a2.parts) support.insert(d);

  // I^i is a quotient of A1^i and a subobject of A2^{i+1}.
  std::vector<int> i_degrees;
  std::vector<std::vector<IsoClassId>> i_choices;
  for (const auto& [i, x1] : a1.parts) {
    auto it = a2.parts.find(i + 1);
    if (it == a2.parts.end()) continue;
    i_degrees.push_back(i);
    i_choices.push_back(intersect(quotient_classes(hall_, x1), sub_classes(hall_, it->second)));
  }

  long base_exponent = 0;
  for (const auto& [i, x1] : a1.parts)
    for (const auto& [j, x2] : a2.parts)
      if (j - i >= 2) base_exponent += ((j - i) % 2 == 0 ? 1 : -1) * hall_.euler_add(x2.dims, x1.dims);

  std::map<GradedObject, mpq_class> acc;
  for_each_choice(i_choices, [&](const std::vector<std::size_t>& idx) {
    std::map<int, IsoClassId> ichosen;
    for (std::size_t k = 0; k < i_degrees.size(); ++k) ichosen[i_degrees[k]] = i_choices[k][idx[k]];
    auto i_at = [&](int d) {
      auto it = ichosen.find(d);
      return it == ichosen.end() ? zero : it->second;
    };
    long exponent = base_exponent;
    for (int i : i_degrees) {
      const DimVec m = a1.at(i, nv).dims - i_at(i).dims;
      const DimVec n = a2.at(i + 1, nv).dims - i_at(i).dims;
      exponent -= hall_.euler_add(n, m);
    }
    std::vector<std::pair<int, Dist>> per_degree;
    for (int i : support) {
      const IsoClassId x1 = a1.at(i, nv);
      const IsoClassId x2 = a2.at(i, nv);
      const IsoClassId ii = i_at(i);
      const IsoClassId iprev = i_at(i - 1);
      const mpq_class norm = ratio(hall_.aut(ii), hall_.aut(x1) * hall_.aut(x2));
      Dist dist;
      for (const auto& [k1, g1] : hall_.subobject_table(x1)) {
        if (k1.first != ii) continue;
        const IsoClassId& m = k1.second;
        for (const auto& [k3, g3] : hall_.subobject_table(x2)) {
          if (k3.second != iprev) continue;
          const IsoClassId& n = k3.first;
          const mpq_class w = norm * mpq_class(g1 * g3 * hall_.aut(m) * hall_.aut(n));
          for (const auto& [x, g2] : hall_.hall_product(m, n)) dist[x] += w * mpq_class(g2);
        }
      }
      if (dist.empty()) return;
      per_degree.emplace_back(i, std::move(dist));
    }
    GradedObject start(period_);
    expand(per_degree, 0, start, hall_.q_power(exponent), acc);
  });

  HallVector out;
  for (const auto& [g, c] : acc) add_term(out, g, QSqrtScalar(c));
  return out;
}

HallVector DerivedHallAlgebra::multiply_odd(const GradedObject& a1, const GradedObject& a2) const {
  const int t = period_.t();
  const std::size_t nv = vertices();

  // S^i is a subobject of A2^i and a quotient of A1^{i-1}.
  std::vector<std::vector<IsoClassId>> s_choices(t);
  for (int i = 0; i < t; ++i)
    s_choices[i] = intersect(sub_classes(hall_, a2.at(i, nv)), quotient_classes(hall_, a1.at(i - 1, nv)));

  long sqrt_exponent = 0;
  for (int i = 0; i < t; ++i) {
    const DimVec d2 = a2.at(i, nv).dims;
    sqrt_exponent += hall_.euler_add(a1.at(i, nv).dims, d2);
    for (int k = 1; k < t; ++k) sqrt_exponent += (k % 2 == 1 ? 1 : -1) * hall_.euler_add(a1.at(i + k, nv).dims, d2);
  }

  std::map<GradedObject, mpq_class> acc;
  for_each_choice(s_choices, [&](const std::vector<std::size_t>& idx) {
    auto s_at = [&](int d) { return s_choices[PeriodSpec(t).reduce(d)][idx[PeriodSpec(t).reduce(d)]]; };
    std::vector<std::pair<int, Dist>> per_degree;
    for (int i = 0; i < t; ++i) {
      const IsoClassId x1 = a1.at(i, nv);
      const IsoClassId x2 = a2.at(i, nv);
      const IsoClassId si = s_at(i);
      const IsoClassId snext = s_at(i + 1);
      Dist dist;
      for (const auto& [k1, g1] : hall_.subobject_table(x2)) {
        if (k1.second != si) continue;
        const IsoClassId& n = k1.first;
        const long e = hall_.euler_add(x1.dims, si.dims) + hall_.euler_add(snext.dims, n.dims);
        const mpq_class pre = hall_.q_power(-e) * mpq_class(hall_.aut(si) * hall_.aut(n));
        for (const auto& [k3, g3] : hall_.subobject_table(x1)) {
          if (k3.first != snext) continue;
          const IsoClassId& m = k3.second;
          const mpq_class w = pre * mpq_class(g1 * g3 * hall_.aut(m));
          for (const auto& [x, g2] : hall_.hall_product(m, n)) dist[x] += w * ratio(g2, hall_.aut(x));
        }
      }
      if (dist.empty()) return;
      per_degree.emplace_back(i, std::move(dist));
    }
    GradedObject start(period_);
    expand(per_degree, 0, start, mpq_class(1), acc);
  });

  const QSqrtScalar scale = v_power(sqrt_exponent) / (a_prime(a1) * a_prime(a2));
  HallVector out;
  for (const auto& [g, h] : acc) add_term(out, g, QSqrtScalar(h) * scale * a_prime(g));
  return out;
}

mpz_class DerivedHallAlgebra::a_derived(const GradedObject& y) const {
  const std::size_t nv = vertices();
  mpz_class a = 1;
  for (const auto& [d, x] : y.parts) {
    a *= hall_.aut(x);
    const IsoClassId prev = y.at(d - 1, nv);
    if (!prev.is_zero()) a *= hall_.ext1_count(x, prev);
  }
  return a;
}

mpq_class DerivedHallAlgebra::bracket(const GradedObject& x, const GradedObject& y) const {
  if (period_.bounded()) throw UnsupportedPeriod("the alternating bracket needs an odd period");
  mpq_class r = 1;
  for (int i = 1; i <= period_.t(); ++i) {
    const mpz_class h = cpx::hom_dt_count(hall_, x, y, i);
    if (i % 2 == 0)
      r *= mpq_class(h);
    else
      r /= mpq_class(h);
  }
  return r;
}

QSqrtScalar DerivedHallAlgebra::a_prime(const GradedObject& y) const {
  {
    std::lock_guard lock(mutex_);
    auto it = a_primes_.find(y);
    if (it != a_primes_.end()) return it->second;
  }
  const QSqrtScalar value = QSqrtScalar(mpq_class(a_derived(y))) * QSqrtScalar::sqrt_qpower(bracket(y, y), q());
  std::lock_guard lock(mutex_);
  a_primes_.emplace(y, value);
  return value;
}

HallVector lt_mul_t0(const DerivedHallAlgebra& alg, const GradedObject& a1, const GradedObject& a2) {
  if (!alg.period().bounded()) throw UnsupportedPeriod("lt_mul_t0 needs the bounded algebra");
  return alg.multiply(a1, a2);
}

HallVector lt_mul_odd(const DerivedHallAlgebra& alg, const GradedObject& a1, const GradedObject& a2) {
  if (alg.period().bounded()) throw UnsupportedPeriod("lt_mul_odd needs an odd period");
  return alg.multiply(a1, a2);
}

}  // namespace hallforge::dha
