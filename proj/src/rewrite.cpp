#include "hallforge/rewrite.hpp"

#include <set>

namespace hallforge::dha {

Word decompose(const GradedObject& x) {
  Word w;
  for (auto it = x.parts.rbegin(); it != x.parts.rend(); ++it) w.push_back({it->second, it->first});
  return w;
}

namespace {

Word strip_zeros(const Word& w) {
  Word out;
  for (const Generator& g : w)
    if (!g.cls.is_zero()) out.push_back(g);
  return out;
}

Word splice(const Word& w, std::size_t k, const Word& replacement) {
  Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  out.insert(out.end(), replacement.begin(), replacement.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(k) + 2, w.end());
  return out;
}

}  // namespace

HallVector normalize_generator_word(const hall::HallEngine& hall, const Word& word, RewriteOrder order,
                                   std::size_t budget) {
  if (budget == 0) budget = hall.registry().category().limits().rewrite_budget;
  const PeriodSpec bounded(0);
  std::map<Word, mpq_class> pending;
  pending[strip_zeros(word)] = 1;
  std::map<GradedObject, mpq_class> done;
  std::size_t steps = 0;

  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = node.key();
    const mpq_class& coef = node.mapped();
    if (coef == 0) continue;

    std::size_t pos = w.size();
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      if (w[k].degree <= w[k + 1].degree) {
        pos = k;
        if (order == RewriteOrder::leftmost) break;
      }
    }
    if (pos == w.size()) {
      GradedObject g(bounded);
      for (const Generator& gen : w) g.set(gen.degree, gen.cls);
      done[g] += coef;
      continue;
    }
    if (++steps > budget)
      throw RewriteBudgetExceeded("rewriting did not terminate within " + std::to_string(budget) + " steps");

    const Generator& left = w[pos];
    const Generator& right = w[pos + 1];
    auto emit = [&](const Word& replacement, const mpq_class& c) {
      if (c == 0) return;
      pending[strip_zeros(splice(w, pos, replacement))] += coef * c;
    };

    if (left.degree == right.degree) {
      // Z_A Z_B = sum_C g^C_{AB} Z_C in one degree.
      for (const auto& [c, g] : hall.hall_product(left.cls, right.cls))
        emit({{c, left.degree}}, mpq_class(g));
    } else if (right.degree == left.degree + 1) {
      // Z_B^{[n]} Z_A^{[n+1]} = sum gamma^{MN}_{AB} <N,M>^{-1} Z_N^{[n+1]} Z_M^{[n]}.
      const IsoClassId& b = left.cls;
      const IsoClassId& a = right.cls;
      std::set<std::pair<IsoClassId, IsoClassId>> pairs;
      for (const auto& [kb, gb] : hall.subobject_table(b))
        for (const auto& [ka, ga] : hall.subobject_table(a))
          if (ka.second == kb.first) pairs.insert({kb.second, ka.first});
      for (const auto& [m, n] : pairs) {
        const mpq_class gamma = hall.gamma(a, b, m, n);
        emit({{n, right.degree}, {m, left.degree}}, gamma / hall.euler_mult_dims(n.dims, m.dims));
      }
    } else {
      // Z_B^{[n]} Z_A^{[m]} = <A,B>^{(-1)^{m-n}} Z_A^{[m]} Z_B^{[n]} for m > n+1.
      const int diff = right.degree - left.degree;
      const int e = hall.euler_add(right.cls.dims, left.cls.dims);
      emit({right, left}, hall.q_power(diff % 2 == 0 ? e : -e));
    }
  }

  HallVector out;
  for (const auto& [g, c] : done) add_term(out, g, QSqrtScalar(c));
  return out;
}

}  // namespace hallforge::dha
