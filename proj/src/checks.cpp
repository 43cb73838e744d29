#include "hallforge/checks.hpp"

#include <set>

namespace hallforge::dha {

using nlohmann::json;

Comparison compare(HallVector lhs, HallVector rhs) {
  Comparison c;
  c.first_mismatch = first_difference(lhs, rhs);
  c.ok = !c.first_mismatch.has_value();
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  return c;
}

Comparison assoc_check(const DerivedHallAlgebra& alg, const GradedObject& a, const GradedObject& b,
                       const GradedObject& c) {
  HallVector left = alg.multiply(alg.multiply(a, b), basis_vector(c));
  HallVector right = alg.multiply(basis_vector(a), alg.multiply(b, c));
  return compare(std::move(left), std::move(right));
}

QSqrtScalar dht_constant_oracle_t1(const cpx::ComplexCategory& ct, const DerivedHallAlgebra& alg,
                                   const GradedObject& a, const GradedObject& b, const GradedObject& l) {
  const mpz_class cones = ct.dt_hom_with_cone_count(a, b.shifted(1), l.shifted(1));
  if (cones == 0) return QSqrtScalar(0);
  const QSqrtScalar root = QSqrtScalar::sqrt_qpower(alg.bracket(a, b.shifted(1)), alg.q());
  return QSqrtScalar(mpq_class(cones)) * root * alg.a_prime(l) / (alg.a_prime(a) * alg.a_prime(b));
}

HallVector dht_product_oracle_t1(const cpx::ComplexCategory& ct, const DerivedHallAlgebra& alg,
                                 const GradedObject& a, const GradedObject& b) {
  const auto& reg = alg.hall().registry();
  const std::size_t nv = alg.vertices();
  HallVector out;
  for (const DimVec& d : repcat::sub_dimvecs(a.total_dims(nv) + b.total_dims(nv))) {
    for (const auto& info : reg.classes(d)) {
      const GradedObject l = GradedObject::stalk(alg.period(), info.id, 0);
      add_term(out, l, dht_constant_oracle_t1(ct, alg, a, b, l));
    }
  }
  return out;
}

std::string to_string(RelationFamily f) {
  switch (f) {
    case RelationFamily::dh0_43: return "dh0_43";
    case RelationFamily::dh0_44: return "dh0_44";
    case RelationFamily::dh0_45: return "dh0_45";
    case RelationFamily::dh1_re1: return "dh1_re1";
    case RelationFamily::dh3_r1: return "dh3_r1";
    case RelationFamily::dh3_r2: return "dh3_r2";
    case RelationFamily::dht_r3: return "dht_r3";
  }
  return "?";
}

RelationFamily parse_relation_family(const std::string& name) {
  for (RelationFamily f : {RelationFamily::dh0_43, RelationFamily::dh0_44, RelationFamily::dh0_45,
                           RelationFamily::dh1_re1, RelationFamily::dh3_r1, RelationFamily::dh3_r2,
                           RelationFamily::dht_r3})
    if (to_string(f) == name) return f;
  throw ParseError("unknown relation family '" + name + "'");
}

std::vector<RelationFamily> families_for_period(int t) {
  if (t == 0) return {RelationFamily::dh0_43, RelationFamily::dh0_44, RelationFamily::dh0_45};
  if (t == 1) return {RelationFamily::dh1_re1};
  if (t == 3) return {RelationFamily::dh3_r1, RelationFamily::dh3_r2};
  return {RelationFamily::dh3_r1, RelationFamily::dh3_r2, RelationFamily::dht_r3};
}

namespace {

void require_period(const DerivedHallAlgebra& alg, bool ok, RelationFamily f) {
  if (!ok)
    throw UnsupportedPeriod("relation family " + to_string(f) + " does not apply to period " +
                            std::to_string(alg.period().t()));
}

std::set<IsoClassId> subs_of(const hall::HallEngine& h, const IsoClassId& c) {
  std::set<IsoClassId> out;
  for (const auto& [k, g] : h.subobject_table(c)) out.insert(k.second);
  return out;
}

std::set<IsoClassId> quotients_of(const hall::HallEngine& h, const IsoClassId& c) {
  std::set<IsoClassId> out;
  for (const auto& [k, g] : h.subobject_table(c)) out.insert(k.first);
  return out;
}

// sum over (M, N) of coef(M, N) * Z_N^{[hi]} Z_M^{[lo]}.
template <class Coef>
HallVector straightened(const DerivedHallAlgebra& alg, const IsoClassId& a, const IsoClassId& b, int hi, int lo,
                        Coef coef) {
  const hall::HallEngine& h = alg.hall();
  HallVector out;
  for (const IsoClassId& m : subs_of(h, b)) {
    for (const IsoClassId& n : quotients_of(h, a)) {
      const mpq_class gamma = h.gamma(a, b, m, n);
      if (gamma == 0) continue;
      const auto prod = alg.multiply(GradedObject::stalk(alg.period(), n, hi), GradedObject::stalk(alg.period(), m, lo));
      out = sum(out, scaled(prod, QSqrtScalar(gamma) * coef(m, n)));
    }
  }
  return out;
}

}  // namespace

Comparison relation_check(RelationFamily family, const RelationParams& p, const DerivedHallAlgebra& alg,
                          const cpx::ComplexCategory* ct) {
  const hall::HallEngine& h = alg.hall();
  const PeriodSpec period = alg.period();
  const int t = period.t();
  auto stalk = [&](const IsoClassId& x, int d) { return GradedObject::stalk(period, x, d); };
  auto eu = [&](const IsoClassId& x, const IsoClassId& y) { return static_cast<long>(h.euler_add(x.dims, y.dims)); };

  switch (family) {
    case RelationFamily::dh0_43: {
      require_period(alg, t == 0, family);
      HallVector rhs;
      for (const auto& [c, g] : h.hall_product(p.a, p.b)) add_term(rhs, stalk(c, p.i), QSqrtScalar(mpq_class(g)));
      return compare(alg.multiply(stalk(p.a, p.i), stalk(p.b, p.i)), std::move(rhs));
    }
    case RelationFamily::dh0_44: {
      require_period(alg, t == 0, family);
      HallVector rhs = straightened(alg, p.a, p.b, p.i + 1, p.i, [&](const IsoClassId& m, const IsoClassId& n) {
        return alg.q_power(-eu(n, m));
      });
      return compare(alg.multiply(stalk(p.b, p.i), stalk(p.a, p.i + 1)), std::move(rhs));
    }
    case RelationFamily::dh0_45: {
      require_period(alg, t == 0, family);
      if (p.j <= p.i + 1) throw IncompatibleObjects("far commutation needs j > i + 1");
      const long e = eu(p.a, p.b);
      const QSqrtScalar factor = alg.q_power((p.j - p.i) % 2 == 0 ? e : -e);
      return compare(alg.multiply(stalk(p.b, p.i), stalk(p.a, p.j)),
                     scaled(alg.multiply(stalk(p.a, p.j), stalk(p.b, p.i)), factor));
    }
    case RelationFamily::dh1_re1: {
      require_period(alg, t == 1, family);
      if (!ct) throw IncompatibleObjects("relation dh1_re1 needs the category of 1-periodic complexes");
      const GradedObject za = stalk(p.a, 0), zb = stalk(p.b, 0);
      const mpz_class hom_ext = h.hom_count(p.a, p.b) * h.ext1_count(p.a, p.b);
      const QSqrtScalar root_inv = QSqrtScalar::sqrt_qpower(mpq_class(hom_ext), alg.q()).inverse();
      auto literal_a_prime = [&](const IsoClassId& x) {
        return QSqrtScalar::sqrt_qpower(mpq_class(h.hom_count(x, x) * h.ext1_count(x, x)), alg.q());
      };
      HallVector rhs, literal;
      for (const DimVec& d : repcat::sub_dimvecs(p.a.dims + p.b.dims)) {
        for (const auto& info : h.registry().classes(d)) {
          const GradedObject zc = stalk(info.id, 0);
          const mpz_class cones = ct->dt_hom_with_cone_count(za, zb, zc);
          if (cones == 0) continue;
          const QSqrtScalar base = QSqrtScalar(mpq_class(cones)) * root_inv;
          add_term(rhs, zc, base * alg.a_prime(zc) / (alg.a_prime(za) * alg.a_prime(zb)));
          add_term(literal, zc,
                   base * literal_a_prime(info.id) / (literal_a_prime(p.a) * literal_a_prime(p.b)));
        }
      }
      Comparison c = compare(alg.multiply(za, zb), std::move(rhs));
      c.note = json{{"literal_a_prime_agrees", !first_difference(c.lhs, literal).has_value()},
                    {"literal_a_prime_rhs", to_json(literal)}};
      return c;
    }
    case RelationFamily::dh3_r1: {
      require_period(alg, t >= 3, family);
      const QSqrtScalar factor = alg.v_power(-eu(p.b, p.a));
      HallVector rhs;
      for (const auto& [c, g] : h.hall_product(p.a, p.b)) add_term(rhs, stalk(c, p.i), QSqrtScalar(mpq_class(g)) * factor);
      return compare(alg.multiply(stalk(p.a, p.i), stalk(p.b, p.i)), std::move(rhs));
    }
    case RelationFamily::dh3_r2: {
      require_period(alg, t >= 3, family);
      HallVector rhs = straightened(alg, p.a, p.b, p.i + 1, p.i, [&](const IsoClassId& m, const IsoClassId& n) {
        return alg.v_power(eu(p.a, p.a) + eu(p.b, p.b) - eu(m, m) - eu(n, n) - eu(p.b, p.a) - eu(n, m));
      });
      return compare(alg.multiply(stalk(p.b, p.i), stalk(p.a, p.i + 1)), std::move(rhs));
    }
    case RelationFamily::dht_r3: {
      require_period(alg, t >= 5, family);
      const int d = period.reduce(p.j - p.i);
      if (d < 2 || d > t - 2) throw IncompatibleObjects("commutation needs 2 <= j - i <= t - 2");
      const long e = eu(p.a, p.b) + eu(p.b, p.a);
      const QSqrtScalar factor = alg.v_power(d % 2 == 0 ? e : -e);
      return compare(alg.multiply(stalk(p.a, p.i), stalk(p.b, p.j)),
                     scaled(alg.multiply(stalk(p.b, p.j), stalk(p.a, p.i)), factor));
    }
  }
  throw InternalInconsistency("unhandled relation family");
}

Comparison crosscheck_t0(const DerivedHallAlgebra& alg, const GradedObject& a, const GradedObject& b) {
  Word w = decompose(a);
  const Word wb = decompose(b);
  w.insert(w.end(), wb.begin(), wb.end());
  return compare(lt_mul_t0(alg, a, b), normalize_generator_word(alg.hall(), w));
}

Comparison crosscheck_t1(const cpx::ComplexCategory& ct, const DerivedHallAlgebra& alg, const GradedObject& a,
                         const GradedObject& b) {
  return compare(lt_mul_odd(alg, a, b), dht_product_oracle_t1(ct, alg, a, b));
}

mpq_class alt_hom_via_counts(const hall::HallEngine& hall, const GradedObject& a, const GradedObject& b) {
  mpq_class out = 1;
  for (int i = 0; i < a.t; ++i) {
    const mpq_class c(cpx::hom_dt_count(hall, a, b, i));
    if (i % 2 == 0)
      out *= c;
    else
      out /= c;
  }
  out.canonicalize();
  return out;
}

std::vector<IsoClassId> classes_in_box(const repcat::ClassRegistry& reg, const DimVec& box) {
  std::vector<IsoClassId> out;
  for (const DimVec& d : repcat::sub_dimvecs(box)) {
    if (d.is_zero()) continue;
    for (const auto& info : reg.classes(d)) out.push_back(info.id);
  }
  return out;
}

std::vector<IsoClassId> classes_up_to_total(const repcat::ClassRegistry& reg, int n) {
  std::vector<IsoClassId> out;
  for (const DimVec& d : repcat::dimvecs_up_to_total(reg.category().quiver().vertex_count(), n)) {
    if (d.is_zero()) continue;
    for (const auto& info : reg.classes(d)) out.push_back(info.id);
  }
  return out;
}

std::vector<GradedObject> bounded_objects(const std::vector<IsoClassId>& classes, int lo, int hi, int max_width) {
  std::vector<GradedObject> out;
  GradedObject current{PeriodSpec(0)};
  std::function<void(int)> rec = [&](int d) {
    if (d > hi) {
      if (current.width() <= max_width) out.push_back(current);
      return;
    }
    rec(d + 1);
    for (const IsoClassId& x : classes) {
      current.set(d, x);
      if (current.width() <= max_width) rec(d + 1);
      current.parts.erase(d);
    }
  };
  rec(lo);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GradedObject> periodic_objects(const repcat::ClassRegistry& reg, PeriodSpec period, int n) {
  const std::vector<IsoClassId> classes = classes_up_to_total(reg, n);
  std::vector<GradedObject> out;
  GradedObject current(period);
  std::function<void(int, int)> rec = [&](int d, int budget) {
    if (d == period.t()) {
      out.push_back(current);
      return;
    }
    rec(d + 1, budget);
    for (const IsoClassId& x : classes) {
      const int size = x.dims.total();
      if (size > budget) continue;
      current.set(d, x);
      rec(d + 1, budget - size);
      current.parts.erase(d);
    }
  };
  rec(0, n);
  std::sort(out.begin(), out.end());
  return out;
}

json to_json(const HallVector& v) {
  json out = json::object();
  for (const auto& [g, c] : v) out[cpx::to_string(g)] = c.to_string();
  return out;
}

json to_json(const Comparison& c) {
  json out{{"ok", c.ok}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}};
  if (c.first_mismatch) out["first_mismatch"] = cpx::to_string(*c.first_mismatch);
  if (!c.note.is_null()) out["note"] = c.note;
  return out;
}

json SweepReport::to_json() const {
  return json{{"checked", checked}, {"passed", passed}, {"counterexamples", counterexamples}, {"notes", notes}};
}

void record(SweepReport& report, const json& label, const Comparison& c, std::size_t keep) {
  ++report.checked;
  if (c.ok) {
    ++report.passed;
    return;
  }
  if (report.counterexamples.size() < keep) {
    json entry = dha::to_json(c);
    entry["case"] = label;
    report.counterexamples.push_back(std::move(entry));
  }
}

SweepReport green_sweep(const hall::HallEngine& hall, const std::vector<DimVec>& totals) {
  const auto& reg = hall.registry();
  SweepReport report;
  for (const DimVec& total : totals) {
    std::vector<std::pair<IsoClassId, IsoClassId>> pairs;
    for (const DimVec& da : repcat::sub_dimvecs(total))
      for (const auto& ia : reg.classes(da))
        for (const auto& ib : reg.classes(total - da)) pairs.emplace_back(ia.id, ib.id);
    for (const auto& [a, b] : pairs) {
      for (const auto& [a2, b2] : pairs) {
        const hall::GreenSides sides = hall.green_sides(a, b, a2, b2);
        ++report.checked;
        if (sides.lhs == sides.rhs) {
          ++report.passed;
        } else if (report.counterexamples.size() < 20) {
          report.counterexamples.push_back(json{{"A", repcat::to_string(a)},
                                                {"B", repcat::to_string(b)},
                                                {"A2", repcat::to_string(a2)},
                                                {"B2", repcat::to_string(b2)},
                                                {"lhs", sides.lhs.get_str()},
                                                {"rhs", sides.rhs.get_str()}});
        }
      }
    }
  }
  return report;
}

SweepReport homological_sweep(const hall::HallEngine& hall, const std::vector<IsoClassId>& classes) {
  SweepReport report;
  for (const IsoClassId& a : classes) {
    for (const IsoClassId& b : classes) {
      mpz_class total = 0;
      for (const auto& info : hall.registry().classes(a.dims + b.dims)) total += hall.ext1_middle_count(a, b, info.id);
      const mpz_class expected = hall.ext1_count(a, b);
      ++report.checked;
      if (total == expected) {
        ++report.passed;
      } else if (report.counterexamples.size() < 20) {
        report.counterexamples.push_back(json{{"A", repcat::to_string(a)},
                                              {"B", repcat::to_string(b)},
                                              {"sum", total.get_str()},
                                              {"ext1", expected.get_str()}});
      }
    }
  }
  return report;
}

SweepReport alt_hom_sweep(const hall::HallEngine& hall, const std::vector<GradedObject>& objects) {
  SweepReport report;
  for (const auto& a : objects) {
    for (const auto& b : objects) {
      const mpq_class lhs = alt_hom_via_counts(hall, a, b);
      const mpq_class rhs = cpx::alt_hom_product(hall, a, b);
      ++report.checked;
      if (lhs == rhs) {
        ++report.passed;
      } else if (report.counterexamples.size() < 20) {
        report.counterexamples.push_back(json{{"A", cpx::to_string(a)},
                                              {"B", cpx::to_string(b)},
                                              {"counts", lhs.get_str()},
                                              {"closed_form", rhs.get_str()}});
      }
    }
  }
  return report;
}

SweepReport assoc_sweep(const DerivedHallAlgebra& alg, const std::vector<GradedObject>& objects) {
  SweepReport report;
  for (const auto& a : objects)
    for (const auto& b : objects)
      for (const auto& c : objects)
        record(report, json::array({cpx::to_string(a), cpx::to_string(b), cpx::to_string(c)}),
               assoc_check(alg, a, b, c));
  return report;
}

SweepReport relation_sweep(const DerivedHallAlgebra& alg, const std::vector<IsoClassId>& classes,
                           const cpx::ComplexCategory* ct, const std::vector<RelationFamily>& families) {
  SweepReport report;
  const int t = alg.period().t();
  bool literal_agrees = true;
  for (RelationFamily f : families) {
    for (const IsoClassId& a : classes) {
      for (const IsoClassId& b : classes) {
        std::vector<RelationParams> params;
        switch (f) {
          case RelationFamily::dh0_43:
          case RelationFamily::dh0_44:
          case RelationFamily::dh1_re1:
            params.push_back({a, b, 0, 0});
            break;
          case RelationFamily::dh0_45:
            params.push_back({a, b, 0, 2});
            params.push_back({a, b, 0, 3});
            break;
          case RelationFamily::dh3_r1:
          case RelationFamily::dh3_r2:
            for (int i = 0; i < t; ++i) params.push_back({a, b, i, 0});
            break;
          case RelationFamily::dht_r3:
            for (int i = 0; i < t; ++i)
              for (int d = 2; d <= t - 2; ++d) params.push_back({a, b, i, i + d});
            break;
        }
        for (const RelationParams& p : params) {
          const Comparison c = relation_check(f, p, alg, ct);
          if (f == RelationFamily::dh1_re1 && !c.note.value("literal_a_prime_agrees", true)) literal_agrees = false;
          record(report,
                 json{{"family", to_string(f)}, {"A", repcat::to_string(a)}, {"B", repcat::to_string(b)},
                      {"i", p.i}, {"j", p.j}},
                 c);
        }
      }
    }
    if (f == RelationFamily::dh1_re1) report.notes["dh1_re1_literal_a_prime_agrees"] = literal_agrees;
  }
  return report;
}

}  // namespace hallforge::dha
