#include "hallforge/cpx.hpp"

namespace hallforge::cpx {

namespace {

mpz_class power(std::uint32_t q, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, e);
  return r;
}

// Degrees j with A^{j+s} possibly nonzero.
std::vector<int> relevant_degrees(const GradedObject& a, int shift) {
  std::vector<int> out;
  if (a.t > 0) {
    for (int j = 0; j < a.t; ++j) out.push_back(j);
    return out;
  }
  for (const auto& [d, x] : a.parts) out.push_back(d - shift);
  return out;
}

}  // namespace

mpz_class hom_dt_count(const hall::HallEngine& hall, const GradedObject& a, const GradedObject& b, int shift) {
  if (a.t != b.t) throw IncompatibleObjects("graded objects with different periods");
  const std::size_t nv = hall.registry().category().quiver().vertex_count();
  mpz_class count = 1;
  for (int j : relevant_degrees(a, shift)) {
    const IsoClassId x = a.at(j + shift, nv);
    if (x.is_zero()) continue;
    const IsoClassId y0 = b.at(j, nv);
    const IsoClassId y1 = b.at(j - 1, nv);
    if (!y0.is_zero()) count *= hall.hom_count(x, y0);
    if (!y1.is_zero()) count *= hall.ext1_count(x, y1);
  }
  return count;
}

mpq_class alt_hom_product(const hall::HallEngine& hall, const GradedObject& a, const GradedObject& b) {
  if (a.t != b.t) throw IncompatibleObjects("graded objects with different periods");
  if (a.t == 0) throw UnsupportedPeriod("the alternating Hom product needs an odd period");
  const int t = a.t;
  const std::size_t nv = hall.registry().category().quiver().vertex_count();
  mpq_class r = 1;
  long exponent = 0;
  for (int i = 0; i < t; ++i) {
    const IsoClassId bi = b.at(i, nv);
    const IsoClassId ai = a.at(i, nv);
    if (!ai.is_zero() && !bi.is_zero()) r *= mpq_class(hall.hom_count(ai, bi) * hall.ext1_count(ai, bi));
    for (int k = 1; k < t; ++k) {
      const int e = hall.euler_add(a.at(i + k, nv).dims, bi.dims);
      exponent += (k % 2 == 0) ? e : -e;
    }
  }
  return r * hall.q_power(exponent);
}

ComplexCategory::ComplexCategory(const hall::HallEngine& base, PeriodSpec period, int lo, int positions)
    : base_(base), period_(period), lo_(period.bounded() ? lo : 0),
      positions_(period.bounded() ? positions : period.t()) {
  if (positions_ <= 0) throw IncompatibleObjects("a bounded complex window needs at least one degree");
  const repcat::Quiver& q = base.registry().category().quiver();
  const std::size_t nv = q.vertex_count();
  const int ndiff = period_.bounded() ? positions_ - 1 : positions_;
  std::vector<std::string> vertices;
  for (int p = 0; p < positions_; ++p)
    for (std::size_t v = 0; v < nv; ++v) vertices.push_back(q.vertices()[v] + "@" + std::to_string(lo_ + p));
  std::vector<repcat::Arrow> arrows;
  for (int p = 0; p < positions_; ++p)
    for (const repcat::Arrow& a : q.arrows())
      arrows.push_back({p * nv + a.src, p * nv + a.dst, a.label + "@" + std::to_string(lo_ + p)});
  for (int p = 0; p < ndiff; ++p) {
    const int next = (p + 1) % positions_;
    for (std::size_t v = 0; v < nv; ++v)
      arrows.push_back({p * nv + v, next * nv + v, "d" + q.vertices()[v] + "@" + std::to_string(lo_ + p)});
  }
  const auto& cat = base.registry().category();
  ext_category_ = std::make_unique<repcat::RepCategory>(repcat::Quiver(vertices, arrows), cat.field(), cat.limits());
  ext_registry_ = std::make_unique<repcat::ClassRegistry>(
      *ext_category_, [this](const Rep& r) { return satisfies_relations(r); });
  ext_hall_ = std::make_unique<hall::HallEngine>(*ext_registry_);
}

int ComplexCategory::position_of(int degree) const {
  if (!period_.bounded()) return period_.reduce(degree);
  const int p = degree - lo_;
  if (p < 0 || p >= positions_)
    throw IncompatibleObjects("degree " + std::to_string(degree) + " lies outside the complex window");
  return p;
}

DimVec ComplexCategory::extended_dims(const std::vector<DimVec>& per_degree) const {
  if (per_degree.size() != static_cast<std::size_t>(positions_))
    throw IncompatibleObjects("expected one dimension vector per degree");
  DimVec out;
  for (const DimVec& d : per_degree) out.v.insert(out.v.end(), d.v.begin(), d.v.end());
  return out;
}

std::vector<DimVec> ComplexCategory::degree_dims(const DimVec& extended) const {
  const std::size_t nv = base_.registry().category().quiver().vertex_count();
  std::vector<DimVec> out;
  for (int p = 0; p < positions_; ++p)
    out.emplace_back(std::vector<int>(extended.v.begin() + p * nv, extended.v.begin() + (p + 1) * nv));
  return out;
}

Rep ComplexCategory::to_extended(const ComplexObj& c) const {
  check(c);
  std::vector<DimVec> dims;
  for (const Rep& m : c.components) dims.push_back(m.dims);
  Rep r{extended_dims(dims), {}};
  for (const Rep& m : c.components) r.maps.insert(r.maps.end(), m.maps.begin(), m.maps.end());
  for (const Morphism& d : c.differentials) r.maps.insert(r.maps.end(), d.begin(), d.end());
  return r;
}

ComplexObj ComplexCategory::from_extended(const Rep& r) const {
  const auto& base_cat = base_.registry().category();
  const std::size_t na = base_cat.quiver().arrows().size();
  const std::size_t nv = base_cat.quiver().vertex_count();
  const int ndiff = period_.bounded() ? positions_ - 1 : positions_;
  ComplexObj c;
  c.t = period_.t();
  c.lo = lo_;
  const std::vector<DimVec> dims = degree_dims(r.dims);
  for (int p = 0; p < positions_; ++p) {
    Rep m{dims[p], std::vector<falg::FieldMatrix>(r.maps.begin() + p * na, r.maps.begin() + (p + 1) * na)};
    c.components.push_back(std::move(m));
  }
  const std::size_t base_off = positions_ * na;
  for (int p = 0; p < ndiff; ++p)
    c.differentials.emplace_back(r.maps.begin() + base_off + p * nv, r.maps.begin() + base_off + (p + 1) * nv);
  return c;
}

bool ComplexCategory::satisfies_relations(const Rep& r) const {
  const auto& base_cat = base_.registry().category();
  const auto& f = base_cat.field();
  const auto& arrows = base_cat.quiver().arrows();
  const std::size_t na = arrows.size();
  const std::size_t nv = base_cat.quiver().vertex_count();
  const int ndiff = period_.bounded() ? positions_ - 1 : positions_;
  const std::size_t base_off = positions_ * na;
  auto d = [&](int p, std::size_t v) -> const falg::FieldMatrix& { return r.maps[base_off + p * nv + v]; };
  auto m = [&](int p, std::size_t ai) -> const falg::FieldMatrix& { return r.maps[p * na + ai]; };
  for (int p = 0; p < ndiff; ++p) {
    const int next = (p + 1) % positions_;
    for (std::size_t ai = 0; ai < na; ++ai) {
      const repcat::Arrow& a = arrows[ai];
      if (falg::multiply(f, d(p, a.dst), m(p, ai)) != falg::multiply(f, m(next, ai), d(p, a.src))) return false;
    }
    if (next < ndiff) {
      for (std::size_t v = 0; v < nv; ++v)
        if (!falg::multiply(f, d(next, v), d(p, v)).is_zero()) return false;
    }
  }
  return true;
}

void ComplexCategory::check(const ComplexObj& c) const {
  const int ndiff = period_.bounded() ? positions_ - 1 : positions_;
  if (c.t != period_.t() || c.lo != lo_ || c.components.size() != static_cast<std::size_t>(positions_) ||
      c.differentials.size() != static_cast<std::size_t>(ndiff))
    throw IncompatibleObjects("complex does not match the period or degree window");
}

ComplexObj ComplexCategory::zero_complex() const {
  const std::size_t nv = base_.registry().category().quiver().vertex_count();
  std::vector<DimVec> dims(positions_, DimVec::zeros(nv));
  return from_extended(ext_category_->zero_rep(extended_dims(dims)));
}

ComplexObj ComplexCategory::as_complex(const GradedObject& g) const {
  if (g.t != period_.t()) throw IncompatibleObjects("graded object has a different period");
  const std::size_t nv = base_.registry().category().quiver().vertex_count();
  std::vector<DimVec> dims(positions_, DimVec::zeros(nv));
  for (const auto& [deg, x] : g.parts) dims[position_of(deg)] = x.dims;
  ComplexObj c = from_extended(ext_category_->zero_rep(extended_dims(dims)));
  for (const auto& [deg, x] : g.parts) c.components[position_of(deg)] = base_.registry().representative(x);
  return c;
}

GradedObject ComplexCategory::homology(const ComplexObj& c) const {
  check(c);
  const auto& base_cat = base_.registry().category();
  const auto& f = base_cat.field();
  const std::size_t nv = base_cat.quiver().vertex_count();
  const int ndiff = static_cast<int>(c.differentials.size());
  GradedObject out(period_);
  for (int p = 0; p < positions_; ++p) {
    const Rep& m = c.components[p];
    const Morphism* out_d = p < ndiff ? &c.differentials[p] : nullptr;
    const Morphism* in_d = nullptr;
    if (period_.bounded()) {
      if (p > 0) in_d = &c.differentials[p - 1];
    } else {
      in_d = &c.differentials[(p + positions_ - 1) % positions_];
    }
    std::vector<falg::Subspace> ker(nv);
    for (std::size_t v = 0; v < nv; ++v)
      ker[v] = out_d ? falg::kernel_basis(f, (*out_d)[v]) : falg::Subspace::full(m.dims[v]);
    const Rep cycles = base_cat.quotient_by_subrep(m, ker).sub;
    std::vector<falg::Subspace> bounds(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      const std::size_t kd = ker[v].dim();
      if (!in_d) {
        bounds[v] = falg::Subspace::zero(kd);
        continue;
      }
      const falg::FieldMatrix& dv = (*in_d)[v];
      falg::FieldMatrix coords(dv.cols(), kd);
      for (std::size_t col = 0; col < dv.cols(); ++col) {
        std::vector<falg::Residue> image(dv.rows());
        for (std::size_t r = 0; r < dv.rows(); ++r) image[r] = dv(r, col);
        if (!ker[v].contains(f, image)) throw InternalInconsistency("boundary outside the cycles: d^2 != 0");
        const auto x = ker[v].coordinates(image);
        for (std::size_t k = 0; k < kd; ++k) coords(col, k) = x[k];
      }
      bounds[v] = falg::span_of_rows(f, coords);
    }
    const Rep h = base_cat.quotient_by_subrep(cycles, bounds).quot;
    out.set(period_.bounded() ? lo_ + p : p, base_.registry().classify(h));
  }
  return out;
}

mpz_class ComplexCategory::hom_ct_count(const ComplexObj& x, const ComplexObj& y) const {
  return power(ext_category_->q(), ext_category_->hom_dim(to_extended(x), to_extended(y)));
}

mpz_class ComplexCategory::aut_ct_count(const ComplexObj& x) const {
  return ext_category_->aut_count(to_extended(x));
}

std::vector<ComplexObj> ComplexCategory::enumerate_complex_classes(const std::vector<DimVec>& per_degree) const {
  std::vector<ComplexObj> out;
  for (const auto& info : ext_registry_->classes(extended_dims(per_degree))) out.push_back(from_extended(info.rep));
  return out;
}

mpz_class ComplexCategory::hall_number_ct(const GradedObject& a, const GradedObject& b, const ComplexObj& c) const {
  const Rep rc = to_extended(c);
  const Rep ra = to_extended(as_complex(a));
  const Rep rb = to_extended(as_complex(b));
  if (ra.dims + rb.dims != rc.dims) return 0;
  return ext_hall_->hall_number(ext_registry_->classify(ra), ext_registry_->classify(rb),
                                ext_registry_->classify(rc));
}

mpz_class ComplexCategory::dt_hom_with_cone_count(const GradedObject& a, const GradedObject& b,
                                                  const GradedObject& x) const {
  if (period_.t() != 1) throw UnsupportedPeriod("the cone-counting oracle is implemented for period 1 only");
  const ComplexObj ca = as_complex(a);
  const ComplexObj cb = as_complex(b);
  const Rep ra = to_extended(ca);
  const Rep rb = to_extended(cb);
  const IsoClassId ia = ext_registry_->classify(ra);
  const IsoClassId ib = ext_registry_->classify(rb);
  const mpz_class numerator = hom_ct_count(ca, cb) * aut_ct_count(ca) * aut_ct_count(cb);
  mpz_class total = 0;
  for (const auto& info : ext_registry_->classes(ra.dims + rb.dims)) {
    const mpz_class g = ext_hall_->hall_number(ia, ib, info.id);
    if (g == 0) continue;
    if (homology(from_extended(info.rep)) != x) continue;
    const mpz_class num = g * numerator;
    const mpz_class aut_c = ext_category_->aut_count(info.rep);
    if (num % aut_c != 0) throw InternalInconsistency("extension count in C_t is not an integer");
    total += num / aut_c;
  }
  return total;
}

}  // namespace hallforge::cpx
