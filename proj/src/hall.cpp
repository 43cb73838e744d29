#include "hallforge/hall.hpp"

namespace hallforge::hall {

namespace {

mpq_class ratio(const mpz_class& num, const mpz_class& den) {
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

HallEngine::HallEngine(const ClassRegistry& registry) : registry_(registry) {}

const SubobjectTable& HallEngine::subobject_table(const IsoClassId& c) const {
  {
    std::lock_guard lock(mutex_);
    auto it = tables_.find(c);
    if (it != tables_.end()) return *it->second;
  }
  const auto& cat = registry_.category();
  const repcat::Rep& rep = registry_.representative(c);
  auto table = std::make_unique<SubobjectTable>();
  for (const DimVec& e : repcat::sub_dimvecs(c.dims)) {
    cat.for_each_subrep(rep, e, [&](const std::vector<falg::Subspace>& u) {
      const repcat::SubQuotient sq = cat.quotient_by_subrep(rep, u);
      ++(*table)[{registry_.classify(sq.quot), registry_.classify(sq.sub)}];
    });
  }
  std::lock_guard lock(mutex_);
  auto [it, inserted] = tables_.emplace(c, std::move(table));
  return *it->second;
}

void HallEngine::import_subobject_table(const IsoClassId& c, SubobjectTable table) {
  std::lock_guard lock(mutex_);
  tables_.emplace(c, std::make_unique<SubobjectTable>(std::move(table)));
}

std::vector<IsoClassId> HallEngine::tabulated() const {
  std::lock_guard lock(mutex_);
  std::vector<IsoClassId> out;
  for (const auto& [c, t] : tables_) out.push_back(c);
  return out;
}

mpz_class HallEngine::hall_number(const IsoClassId& a, const IsoClassId& b, const IsoClassId& c) const {
  if (a.dims + b.dims != c.dims) return 0;
  const SubobjectTable& t = subobject_table(c);
  auto it = t.find({a, b});
  return it == t.end() ? mpz_class(0) : it->second;
}

std::map<IsoClassId, mpz_class> HallEngine::hall_product(const IsoClassId& a, const IsoClassId& b) const {
  std::map<IsoClassId, mpz_class> out;
  for (const auto& info : registry_.classes(a.dims + b.dims)) {
    mpz_class g = hall_number(a, b, info.id);
    if (g != 0) out.emplace(info.id, std::move(g));
  }
  return out;
}

int HallEngine::euler_add(const DimVec& d1, const DimVec& d2) const {
  if (d1.size() != d2.size()) throw IncompatibleObjects("dimension vectors of different length");
  int value = 0;
  for (std::size_t v = 0; v < d1.size(); ++v) value += d1[v] * d2[v];
  for (const auto& a : registry_.category().quiver().arrows()) value -= d1[a.src] * d2[a.dst];
  return value;
}

mpq_class HallEngine::q_power(long e) const {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), q(), static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return mpq_class(p);
  return ratio(1, p);
}

mpq_class HallEngine::euler_mult_dims(const DimVec& d1, const DimVec& d2) const {
  return q_power(euler_add(d1, d2));
}

std::size_t HallEngine::hom_dim(const IsoClassId& a, const IsoClassId& b) const {
  const auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(mutex_);
    auto it = hom_dims_.find(key);
    if (it != hom_dims_.end()) return it->second;
  }
  const std::size_t d = registry_.category().hom_dim(registry_.representative(a), registry_.representative(b));
  std::lock_guard lock(mutex_);
  hom_dims_.emplace(key, d);
  return d;
}

mpz_class HallEngine::hom_count(const IsoClassId& a, const IsoClassId& b) const {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q(), hom_dim(a, b));
  return r;
}

mpz_class HallEngine::ext1_count(const IsoClassId& a, const IsoClassId& b) const {
  const long e = static_cast<long>(hom_dim(a, b)) - euler_add(a.dims, b.dims);
  if (e < 0)
    throw InternalInconsistency("negative Ext exponent for (" + repcat::to_string(a) + ", " +
                                repcat::to_string(b) + ")");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q(), static_cast<unsigned long>(e));
  return r;
}

mpq_class HallEngine::euler_mult(const IsoClassId& a, const IsoClassId& b) const {
  return ratio(hom_count(a, b), ext1_count(a, b));
}

mpz_class HallEngine::ext1_middle_count(const IsoClassId& a, const IsoClassId& b, const IsoClassId& c) const {
  const mpz_class g = hall_number(a, b, c);
  if (g == 0) return 0;
  const mpz_class num = g * hom_count(a, b) * aut(a) * aut(b);
  if (num % aut(c) != 0)
    throw InternalInconsistency("extension count for " + repcat::to_string(c) + " is not an integer");
  return num / aut(c);
}

mpq_class HallEngine::gamma(const IsoClassId& a, const IsoClassId& b, const IsoClassId& m,
                            const IsoClassId& n) const {
  const DimVec di = b.dims - m.dims;
  if (di != a.dims - n.dims || !di.nonnegative()) return 0;
  const SubobjectTable& tb = subobject_table(b);
  const SubobjectTable& ta = subobject_table(a);
  mpq_class sum = 0;
  for (const auto& [key, gb] : tb) {
    if (key.second != m) continue;
    const IsoClassId& i = key.first;
    auto it = ta.find({n, i});
    if (it == ta.end()) continue;
    sum += mpq_class(gb * it->second * aut(i));
  }
  if (sum == 0) return 0;
  return sum * ratio(aut(m) * aut(n), aut(a) * aut(b));
}

GreenSides HallEngine::green_sides(const IsoClassId& a, const IsoClassId& b, const IsoClassId& a2,
                                   const IsoClassId& b2) const {
  GreenSides out{0, 0};
  const DimVec total = a.dims + b.dims;
  if (total != a2.dims + b2.dims) return out;

  for (const auto& info : registry_.classes(total)) {
    const mpz_class g1 = hall_number(a, b, info.id);
    if (g1 == 0) continue;
    const mpz_class g2 = hall_number(a2, b2, info.id);
    if (g2 == 0) continue;
    out.lhs += ratio(g1 * g2, info.aut);
  }
  out.lhs *= mpq_class(aut(a) * aut(b) * aut(a2) * aut(b2));

  const SubobjectTable& ta = subobject_table(a);
  const SubobjectTable& tb = subobject_table(b);
  for (const auto& [xx, ga] : ta) {
    const auto& [x, x1] = xx;  // quotient X, subobject X'
    for (const auto& [yy, gb] : tb) {
      const auto& [y, y1] = yy;
      if (x.dims + y.dims != a2.dims) continue;
      const mpz_class g3 = hall_number(x, y, a2);
      if (g3 == 0) continue;
      const mpz_class g4 = hall_number(x1, y1, b2);
      if (g4 == 0) continue;
      mpq_class term(ga * gb * g3 * g4 * aut(x) * aut(y) * aut(x1) * aut(y1));
      out.rhs += term / euler_mult_dims(x.dims, y1.dims);
    }
  }
  out.lhs.canonicalize();
  out.rhs.canonicalize();
  return out;
}

}  // namespace hallforge::hall
