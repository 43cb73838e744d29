#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hallforge/checks.hpp"
#include "support.hpp"

using namespace hallforge;
using namespace hallforge::dha;
using repcat::ClassRegistry;
using repcat::Quiver;
using repcat::RepCategory;

namespace {

struct Setup {
  RepCategory cat;
  ClassRegistry reg;
  hall::HallEngine hall;
  Setup(Quiver q, std::uint32_t p) : cat(std::move(q), falg::FieldSpec(p)), reg(cat), hall(reg) {}
  std::size_t nv() const { return cat.quiver().vertex_count(); }
  GradedObject g(const std::string& text) const { return cpx::parse_graded(text, PeriodSpec(0), nv()); }
};

}  // namespace

TEST_CASE("a word already in descending order reads off its object") {
  Setup s(support::a2(), 2);
  const GradedObject x = s.g("[k1.1#1@0, k0.1@2, k1.0@5]");
  const Word w = decompose(x);
  REQUIRE(w.size() == 3);
  CHECK(w.front().degree == 5);
  CHECK(w.back().degree == 0);
  CHECK(normalize_generator_word(s.hall, w) == basis_vector(x));
  CHECK(normalize_generator_word(s.hall, {}) == basis_vector(s.g("[]")));
}

TEST_CASE("straightening two simple stalks by hand") {
  Setup s(support::a1(), 2);
  const auto k = repcat::parse_class_id("k1", 1);
  // Z_k^{[0]} Z_k^{[1]}: the zero map contributes <k,k>^{-1} [k@1, k@0], the identity contributes [].
  const HallVector out = normalize_generator_word(s.hall, {{k, 0}, {k, 1}});
  HallVector expected;
  add_term(expected, s.g("[k1@0, k1@1]"), QSqrtScalar(mpq_class(1, 2)));
  add_term(expected, s.g("[]"), QSqrtScalar(1));
  CHECK(out == expected);
  // Far commutation: Z_k^{[0]} Z_k^{[2]} = <k,k> Z_k^{[2]} Z_k^{[0]}.
  HallVector far;
  add_term(far, s.g("[k1@0, k1@2]"), QSqrtScalar(2));
  CHECK(normalize_generator_word(s.hall, {{k, 0}, {k, 2}}) == far);
  HallVector farther;
  add_term(farther, s.g("[k1@0, k1@3]"), QSqrtScalar(mpq_class(1, 2)));
  CHECK(normalize_generator_word(s.hall, {{k, 0}, {k, 3}}) == farther);
}

TEST_CASE("rewriting order does not change the normal form") {
  Setup s(support::a2(), 2);
  const auto classes = classes_in_box(s.reg, repcat::DimVec({1, 1}));
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    Word w;
    const std::size_t len = 2 + rng() % 3;
    for (std::size_t i = 0; i < len; ++i) w.push_back({classes[rng() % classes.size()], static_cast<int>(rng() % 3)});
    CHECK(normalize_generator_word(s.hall, w, RewriteOrder::leftmost) ==
          normalize_generator_word(s.hall, w, RewriteOrder::rightmost));
  }
}

TEST_CASE("rewriting a product of words agrees with multiplying normal forms") {
  Setup s(support::a1(), 2);
  const DerivedHallAlgebra alg(s.hall, PeriodSpec(0));
  const auto classes = classes_in_box(s.reg, repcat::DimVec({1}));
  std::mt19937 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    Word u, v;
    for (int i = 0; i < 2; ++i) u.push_back({classes[rng() % classes.size()], static_cast<int>(rng() % 3)});
    for (int i = 0; i < 2; ++i) v.push_back({classes[rng() % classes.size()], static_cast<int>(rng() % 3)});
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    CHECK(normalize_generator_word(s.hall, uv) ==
          alg.multiply(normalize_generator_word(s.hall, u), normalize_generator_word(s.hall, v)));
  }
}

TEST_CASE("closed-form bounded product matches rewriting") {
  for (const Quiver& q : {support::a1(), support::a2()}) {
    Setup s(q, 2);
    const DerivedHallAlgebra alg(s.hall, PeriodSpec(0));
    const DimVec box(std::vector<int>(s.nv(), 1));
    const auto objects = bounded_objects(classes_in_box(s.reg, box), 0, 2, 2);
    for (const auto& a : objects)
      for (const auto& b : objects) CHECK(crosscheck_t0(alg, a, b).ok);
  }
}

TEST_CASE("the step budget is enforced") {
  Setup s(support::a1(), 2);
  const auto k = repcat::parse_class_id("k1", 1);
  const Word w{{k, 0}, {k, 1}, {k, 2}, {k, 3}};
  CHECK_THROWS_AS(normalize_generator_word(s.hall, w, RewriteOrder::leftmost, 2), RewriteBudgetExceeded);
  CHECK_NOTHROW(normalize_generator_word(s.hall, w));
}
