#include "doctest.h"

#include <numbers>
#include <set>

#include "framelab/abelian_group.hpp"
#include "framelab/error.hpp"
#include "support.hpp"

using namespace framelab;

TEST_CASE("parsing and naming") {
  const auto g = AbelianGroup::parse("Z2xZ4");
  CHECK(g.factors() == std::vector<int>{2, 4});
  CHECK(g.order() == 8);
  CHECK(g.exponent() == 4);
  CHECK(g.name() == "Z2xZ4");
  CHECK(AbelianGroup::parse("z3XZ5").name() == "Z3xZ5");
  CHECK(AbelianGroup::parse("Z8").is_cyclic());

  for (const char* bad : {"", "Q5", "Z", "Z2x", "Z2*Z3", "Zfoo"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(AbelianGroup::parse(bad), Error);
  }
  CHECK_THROWS_AS(AbelianGroup({1}), Error);
  try {
    AbelianGroup({2048, 1024});
    FAIL("expected a capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::capacity);
  }
}

TEST_CASE("indices are mixed radix with the first coordinate most significant") {
  for (const auto& factors : std::vector<std::vector<int>>{{2, 4}, {3, 3, 2}, {12}, {2, 2, 2}}) {
    const AbelianGroup g(factors);
    const auto o = test::mirror(g);
    for (Index i = 0; i < g.order(); ++i) {
      CHECK(g.element(i).coords == o.coords(static_cast<int>(i)));
      CHECK(g.index_of(g.element(i)) == i);
    }
  }
}

TEST_CASE("group operations agree with coordinate arithmetic") {
  for (const auto& factors : std::vector<std::vector<int>>{{2, 4}, {3, 6}, {9}, {2, 2, 3}}) {
    const AbelianGroup g(factors);
    const auto o = test::mirror(g);
    for (Index a = 0; a < g.order(); ++a) {
      CHECK(g.negate(a) == static_cast<Index>(o.neg(static_cast<int>(a))));
      for (Index b = 0; b < g.order(); ++b) {
        CHECK(g.add(a, b) == static_cast<Index>(o.add(static_cast<int>(a), static_cast<int>(b))));
        CHECK(g.subtract(a, b) == static_cast<Index>(o.sub(static_cast<int>(a), static_cast<int>(b))));
      }
    }
  }
}

TEST_CASE("element order and multiples") {
  const AbelianGroup g({2, 4});
  CHECK(g.element_order(0) == 1);
  CHECK(g.element_order(g.index_of({{1, 1}})) == 4);
  CHECK(g.element_order(g.index_of({{1, 2}})) == 2);
  CHECK(g.multiply(g.index_of({{1, 1}}), 3) == g.index_of({{1, 3}}));
  CHECK(g.multiply(g.index_of({{1, 1}}), -1) == g.index_of({{1, 3}}));
}

TEST_CASE("characters match the defining exponential") {
  for (const auto& factors : std::vector<std::vector<int>>{{6}, {2, 4}, {3, 5}}) {
    const AbelianGroup g(factors);
    const auto o = test::mirror(g);
    for (Index x = 0; x < g.order(); ++x) {
      for (Index y = 0; y < g.order(); ++y) {
        CHECK(std::abs(g.character(x, y) - o.chi(static_cast<int>(x), static_cast<int>(y))) < 1e-12);
        CHECK(g.phase(x, y) == g.phase(y, x));
      }
    }
  }
}

TEST_CASE("quarter-turn roots are exact") {
  const AbelianGroup g({4});
  CHECK(g.character(1, 1) == std::complex<double>(0.0, 1.0));
  CHECK(g.character(2, 1) == std::complex<double>(-1.0, 0.0));
  CHECK(g.character(3, 1) == std::complex<double>(0.0, -1.0));
  const auto v = character_eval(AbelianGroup({2, 4}), {{1, 2}}, {{1, 3}});
  CHECK(v.numerator == 0);
  CHECK(v.denominator == 1);
}

TEST_CASE("orthogonality of characters") {
  const AbelianGroup g({3, 4});
  for (const auto& x : g.elements()) {
    const auto s = full_group_sum(g, x);
    CHECK(std::abs(s - std::complex<double>(x == g.identity() ? 12.0 : 0.0)) < 1e-9);
  }
}

TEST_CASE("element and subset syntax") {
  const AbelianGroup c({9});
  CHECK(c.parse_subset("{0,1,3,4}") == std::vector<Index>{0, 1, 3, 4});
  CHECK(c.parse_subset("0, 1, 3, 4") == std::vector<Index>{0, 1, 3, 4});
  CHECK(c.parse_element("-1") == Element{{8}});
  CHECK(c.format_subset(std::vector<Index>{0, 4}) == "{0,4}");

  const AbelianGroup g({2, 4});
  const auto s = g.parse_subset("{(0,0),(1,0),(0,1)}");
  CHECK(g.format_subset(s) == "{(0,0),(1,0),(0,1)}");
  CHECK(g.parse_subset("(0,0),(1,3)").size() == 2);
  CHECK_THROWS_AS(g.parse_element("(1,2,3)"), Error);
  CHECK_THROWS_AS(g.parse_element("(1;2)"), Error);
  CHECK_THROWS_AS(c.parse_subset("{0,a}"), Error);
}

TEST_CASE("cyclic closure") {
  const AbelianGroup g({8});
  CHECK(subgroup_generated(g, std::vector<Index>{2}).members == std::vector<Index>{0, 2, 4, 6});
  CHECK(subgroup_generated(g, std::vector<Index>{6, 4}).members == std::vector<Index>{0, 2, 4, 6});
  CHECK(subgroup_generated(g, std::vector<Index>{}).members == std::vector<Index>{0});
  CHECK(is_subgroup(g, std::vector<Index>{0, 4}));
  CHECK_FALSE(is_subgroup(g, std::vector<Index>{0, 3}));
}

TEST_CASE("subgroup lattices agree with closure search") {
  for (const auto& factors : std::vector<std::vector<int>>{{4}, {2, 2}, {2, 4}, {8}, {2, 2, 2}, {12}, {2, 6}, {4, 4}}) {
    const AbelianGroup g(factors);
    CAPTURE(g.name());
    const auto subs = all_subgroups(g);
    std::set<std::vector<int>> mine;
    for (const auto& h : subs) mine.insert(test::ints(h.members));
    const auto ref = oracle::subgroups(test::mirror(g));
    CHECK(mine.size() == subs.size());
    CHECK(mine == std::set<std::vector<int>>(ref.begin(), ref.end()));
    for (std::size_t i = 1; i < subs.size(); ++i) CHECK(subs[i - 1].order() <= subs[i].order());
  }
}

TEST_CASE("annihilators") {
  const AbelianGroup g({2, 4});
  const auto o = test::mirror(g);
  for (const auto& h : all_subgroups(g)) {
    const auto ann = annihilator(g, h);
    CHECK(ann.order() * h.order() == g.order());
    for (Index z = 0; z < g.order(); ++z) {
      bool trivial = true;
      for (Index x : h.members) trivial = trivial && std::abs(o.chi(static_cast<int>(z), static_cast<int>(x)) - 1.0) < 1e-9;
      CHECK(ann.contains(z) == trivial);
    }
  }
  CHECK_THROWS_AS(annihilator(g, Subgroup{{0, 1}}), Error);
}

TEST_CASE("abelian groups of a given order") {
  auto names = [](std::size_t n) {
    std::vector<std::string> out;
    for (const auto& g : abelian_groups_of_order(n)) out.push_back(g.name());
    return out;
  };
  CHECK(names(8) == std::vector<std::string>{"Z2xZ2xZ2", "Z2xZ4", "Z8"});
  CHECK(names(12) == std::vector<std::string>{"Z2xZ6", "Z12"});
  CHECK(names(7) == std::vector<std::string>{"Z7"});
  CHECK(abelian_groups_of_order(16).size() == 5);
  CHECK(abelian_groups_of_order(64).size() == 11);
  CHECK(abelian_groups_of_order(36).size() == 4);
}

TEST_CASE("subgroup lattice containment") {
  const SubgroupLattice lat(AbelianGroup({8}));
  REQUIRE(lat.subgroups().size() == 4);
  CHECK(lat.contains(3, 1));
  CHECK(lat.contains(2, 1));
  CHECK_FALSE(lat.contains(1, 2));
}
