#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <set>

#include "hallforge/registry.hpp"
#include "support.hpp"

using namespace hallforge;
using namespace hallforge::repcat;

TEST_CASE("quiver JSON round trip and file fixtures") {
  for (const Quiver& q : {support::a1(), support::a2(), support::a3()}) CHECK(Quiver::from_json(q.to_json()) == q);
  std::ifstream in(std::string(HALLFORGE_DATA_DIR) + "/quivers/a2.json");
  REQUIRE(in);
  CHECK(Quiver::from_json(nlohmann::json::parse(in)) == support::a2());
}

TEST_CASE("cycles are rejected and named") {
  const Quiver loop({"1"}, {Arrow{0, 0, "x"}});
  CHECK_THROWS_AS(validate_quiver(loop), NotHereditarySetup);
  const Quiver cyc({"1", "2", "3"}, {Arrow{0, 1, "a"}, Arrow{1, 2, "b"}, Arrow{2, 0, "c"}});
  try {
    validate_quiver(cyc);
    FAIL("expected a cycle error");
  } catch (const NotHereditarySetup& e) {
    const std::string msg = e.what();
    CHECK(msg.find('1') != std::string::npos);
    CHECK(msg.find('3') != std::string::npos);
  }
  CHECK_NOTHROW(validate_quiver(support::a3()));
  const auto order = topological_order(support::a3());
  CHECK(order == std::vector<std::size_t>{0, 1, 2});
  CHECK_THROWS_AS(Quiver::from_json(nlohmann::json::parse(R"({"vertices":["1"],"arrows":[{"src":"1","dst":"9","label":"a"}]})")),
                  ParseError);
}

TEST_CASE("dimension vector helpers") {
  const DimVec d({1, 2});
  CHECK(sub_dimvecs(d).size() == 6);
  CHECK(sub_dimvecs(d).front() == DimVec({0, 0}));
  CHECK(sub_dimvecs(d).back() == d);
  // Vectors of length 2 with total <= 3: 1 + 2 + 3 + 4.
  CHECK(dimvecs_up_to_total(2, 3).size() == 10);
  CHECK((d - DimVec({1, 0})) == DimVec({0, 2}));
  CHECK(d.total() == 3);
}

TEST_CASE("hom and ext dimensions agree with exhaustive search") {
  for (long p : {2L, 3L}) {
    const RepCategory cat(support::a2(), falg::FieldSpec(static_cast<std::uint32_t>(p)));
    const ClassRegistry reg(cat);
    std::vector<ClassInfo> all;
    for (const DimVec& d : dimvecs_up_to_total(2, 3))
      for (const auto& info : reg.classes(d)) all.push_back(info);
    for (const auto& x : all) {
      for (const auto& y : all) {
        if (x.id.dims.total() + y.id.dims.total() > 4) continue;
        const std::size_t homs = support::brute_homs(cat.quiver(), x.rep, y.rep, p).size();
        const std::size_t hd = cat.hom_dim(x.rep, y.rep);
        CHECK(homs == static_cast<std::size_t>(support::pow_mod(p, static_cast<long>(hd), 1L << 40)));
        // Euler form: dim Hom - dim Ext = <dims x, dims y>.
        const long euler = x.id.dims[0] * y.id.dims[0] + x.id.dims[1] * y.id.dims[1] - x.id.dims[0] * y.id.dims[1];
        CHECK(static_cast<long>(hd) - static_cast<long>(cat.ext1_dim(x.rep, y.rep)) == euler);
      }
    }
  }
}

TEST_CASE("classes partition each variety and match the rank invariant on 1 -> 2") {
  for (long p : {2L, 3L}) {
    const RepCategory cat(support::a2(), falg::FieldSpec(static_cast<std::uint32_t>(p)));
    const ClassRegistry reg(cat);
    for (const DimVec& d : dimvecs_up_to_total(2, 4)) {
      const auto& classes = reg.classes(d);
      CHECK(classes.size() == static_cast<std::size_t>(std::min(d[0], d[1]) + 1));
      CHECK(classes.front().id.index == 0);
      mpz_class orbits = 0;
      std::set<support::A2Invariant> invariants;
      for (const auto& info : classes) {
        orbits += info.orbit_size;
        invariants.insert(support::a2_invariant(info.rep, p));
        CHECK(info.aut * info.orbit_size == support::gl_order(d[0], p) * support::gl_order(d[1], p));
        CHECK(reg.classify(info.rep) == info.id);
      }
      CHECK(invariants.size() == classes.size());
      CHECK(orbits == reg.variety_size(d));
    }
  }
}

TEST_CASE("classification agrees with brute-force isomorphism on every tuple") {
  const long p = 2;
  const RepCategory cat(support::a3(), falg::FieldSpec(2));
  const ClassRegistry reg(cat);
  for (const DimVec& d : {DimVec({1, 1, 1}), DimVec({1, 2, 1}), DimVec({2, 1, 1})}) {
    const auto& classes = reg.classes(d);
    const std::uint64_t tuples = reg.variety_size(d).get_ui();
    for (std::uint64_t code = 0; code < tuples; ++code) {
      const Rep r = reg.decode(d, code);
      CHECK(reg.encode(r) == code);
      const IsoClassId id = reg.classify(r);
      CHECK(support::brute_isomorphic(cat.quiver(), r, classes[id.index].rep, p));
      CHECK(cat.is_isomorphic(r, classes[id.index].rep));
      for (const auto& other : classes)
        if (other.id != id) CHECK_FALSE(support::brute_isomorphic(cat.quiver(), r, other.rep, p));
    }
    for (const auto& info : classes) CHECK(cat.aut_count(info.rep) == support::brute_aut(cat.quiver(), info.rep, p));
  }
  // (1,1,1) on 1 -> 2 -> 3: each arrow is zero or not.
  CHECK(reg.classes(DimVec({1, 1, 1})).size() == 4);
}

TEST_CASE("automorphisms of k^n form GL_n") {
  for (std::uint32_t p : {2u, 3u}) {
    const RepCategory cat(support::a1(), falg::FieldSpec(p));
    const ClassRegistry reg(cat);
    for (int n = 0; n <= 3; ++n) {
      const auto& classes = reg.classes(DimVec({n}));
      REQUIRE(classes.size() == 1);
      CHECK(classes[0].aut == support::gl_order(n, p));
      CHECK(cat.aut_count(classes[0].rep) == support::gl_order(n, p));
    }
  }
}

TEST_CASE("subrepresentations of k^n are the subspaces") {
  const RepCategory cat(support::a1(), falg::FieldSpec(3));
  const ClassRegistry reg(cat);
  const Rep k3 = reg.classes(DimVec({3}))[0].rep;
  for (int d = 0; d <= 3; ++d) {
    std::size_t count = 0;
    cat.for_each_subrep(k3, DimVec({d}), [&](const std::vector<falg::Subspace>&) { ++count; });
    CHECK(support::q_binomial(3, d, 3) == count);
  }
}

TEST_CASE("subrepresentations of P1 on 1 -> 2 and quotients") {
  const RepCategory cat(support::a2(), falg::FieldSpec(2));
  const ClassRegistry reg(cat);
  const Rep p1 = reg.info(IsoClassId{DimVec({1, 1}), 1}).rep;
  CHECK(support::a2_invariant(p1, 2) == support::A2Invariant{1, 1, 1});
  std::size_t s2 = 0, s1 = 0;
  cat.for_each_subrep(p1, DimVec({0, 1}), [&](const std::vector<falg::Subspace>& u) {
    ++s2;
    const SubQuotient sq = cat.quotient_by_subrep(p1, u);
    CHECK(sq.quot.dims == DimVec({1, 0}));
  });
  cat.for_each_subrep(p1, DimVec({1, 0}), [&](const std::vector<falg::Subspace>&) { ++s1; });
  CHECK(s2 == 1);
  CHECK(s1 == 0);
  const std::vector<falg::Subspace> bad{falg::Subspace::full(1), falg::Subspace::zero(1)};
  CHECK_FALSE(cat.is_subrep(p1, bad));
  CHECK_THROWS_AS(cat.quotient_by_subrep(p1, bad), NotASubobject);
}

TEST_CASE("direct sums add dimensions and hom counts") {
  const RepCategory cat(support::a2(), falg::FieldSpec(2));
  const ClassRegistry reg(cat);
  const Rep s1 = reg.classes(DimVec({1, 0}))[0].rep;
  const Rep s2 = reg.classes(DimVec({0, 1}))[0].rep;
  const Rep sum = cat.direct_sum(s1, s2);
  CHECK(sum.dims == DimVec({1, 1}));
  CHECK(reg.classify(sum) == IsoClassId{DimVec({1, 1}), 0});
  CHECK(cat.hom_dim(sum, sum) == 2);
}

TEST_CASE("class identifiers print and parse") {
  const IsoClassId id{DimVec({1, 1}), 1};
  CHECK(to_string(id) == "k1.1#1");
  CHECK(parse_class_id("k1.1#1", 2) == id);
  CHECK(parse_class_id("k2", 1) == IsoClassId{DimVec({2}), 0});
  CHECK_THROWS_AS(parse_class_id("x1", 1), ParseError);
  CHECK_THROWS_AS(parse_class_id("k1", 2), ParseError);
}

TEST_CASE("enumeration bounds are enforced") {
  Limits small;
  small.max_variety = 100;
  const RepCategory cat(support::a2(), falg::FieldSpec(2), small);
  const ClassRegistry reg(cat);
  try {
    reg.classes(DimVec({3, 3}));
    FAIL("expected EnumerationTooLarge");
  } catch (const EnumerationTooLarge& e) {
    CHECK(e.bound() == "max_variety");
  }
}
