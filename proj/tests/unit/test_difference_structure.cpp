#include "doctest.h"

#include <random>
#include <set>

#include "framelab/difference_structure.hpp"
#include "framelab/error.hpp"
#include "support.hpp"

using namespace framelab;

namespace {

std::vector<Index> all_of(const AbelianGroup& g) {
  std::vector<Index> v(g.order());
  for (Index i = 0; i < g.order(); ++i) v[i] = i;
  return v;
}

}  // namespace

TEST_CASE("difference counts match the pairwise definition") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 80; ++trial) {
    const AbelianGroup g(oracle::random_factors(rng, 30));
    const int n = static_cast<int>(g.order());
    const int m = std::uniform_int_distribution<int>(2, n)(rng);
    const auto s = oracle::random_subset(rng, n, m);
    const auto c = difference_counts(g, test::idx(s));
    const auto ref = oracle::diff_counts(test::mirror(g), s);
    CHECK(c.counts == std::vector<long>(ref.begin(), ref.end()));
  }
}

TEST_CASE("difference counts reject bad subsets") {
  const AbelianGroup g({7});
  CHECK_THROWS_AS(difference_counts(g, std::vector<Index>{1}), Error);
  CHECK_THROWS_AS(difference_counts(g, std::vector<Index>{1, 1, 2}), Error);
}

TEST_CASE("the Singer set in Z7") {
  const auto c = classify(AbelianGroup({7}), std::vector<Index>{1, 2, 4});
  CHECK(c.difference_set);
  CHECK(c.lambda == 1);
  CHECK(c.divisible.holds);
  CHECK_FALSE(c.divisible.proper);
  CHECK(c.partial.holds);
  CHECK_FALSE(c.bidifference.proper);
  CHECK_FALSE(c.almost.holds);
  REQUIRE(c.nested_divisible);
  CHECK(c.nested_divisible->t() == 1);
}

TEST_CASE("Z6 {0,1,3} is divisible relative to {0,3}") {
  const auto c = classify(AbelianGroup({6}), std::vector<Index>{0, 1, 3});
  CHECK_FALSE(c.difference_set);
  CHECK(c.bidifference_assignments.size() == 2);
  REQUIRE(c.divisible.proper);
  const auto& p = *c.divisible.params;
  CHECK(p == BidifferenceParams{6, 3, 2, 2, 1, {0, 3}});
  CHECK_FALSE(c.relative.holds);
  CHECK_FALSE(c.partial.holds);
  REQUIRE(c.nested_divisible);
  CHECK(c.nested_divisible->t() == 2);
  CHECK(c.nested_divisible->lambdas == std::vector<long>{2, 1});
}

TEST_CASE("Z9 {0,1,3,4}") {
  const AbelianGroup g({9});
  const std::vector<Index> s{0, 1, 3, 4};
  const auto d = difference_counts(g, s);
  CHECK(d.levels().at(2) == std::vector<Index>{1, 3, 6, 8});
  CHECK(d.levels().at(1) == std::vector<Index>{2, 4, 5, 7});

  const auto c = classify(g, s);
  CHECK(c.bidifference.proper);
  const BidifferenceParams expected{9, 4, 5, 2, 1, {0, 1, 3, 6, 8}};
  CHECK(std::find(c.bidifference_assignments.begin(), c.bidifference_assignments.end(), expected) !=
        c.bidifference_assignments.end());
  CHECK_FALSE(c.divisible.holds);
  CHECK(c.almost.holds);
  CHECK_FALSE(c.nested_divisible);
  CHECK(c.nested_t_general == 2);
}

TEST_CASE("Paley set in Z13") {
  const AbelianGroup g({13});
  const auto qr = quadratic_residues(g);
  CHECK(qr == std::vector<Index>{1, 3, 4, 9, 10, 12});
  const auto c = classify(g, qr);
  REQUIRE(c.partial.proper);
  CHECK(c.partial.params->lambda == 2);
  CHECK(c.partial.params->mu == 3);
  CHECK(c.gaussian.proper);
  CHECK(c.reversible);
  CHECK(c.regular);
  CHECK(quadratic_residues(AbelianGroup({9})).empty());
  CHECK(quadratic_residues(AbelianGroup({2, 5})).empty());
}

TEST_CASE("zero toggle of a reversible partial difference set") {
  const AbelianGroup g({13});
  const auto qr = quadratic_residues(g);
  const auto t = pds_zero_toggle(g, qr);
  CHECK(t.m == 7);
  CHECK(t.lambda == 4);
  CHECK(t.mu == 3);
  CHECK(t.subset.front() == 0);
  const auto counts = oracle::diff_counts(oracle::Group{{13}}, test::ints(t.subset));
  for (int x = 1; x < 13; ++x) {
    const bool in_a = std::binary_search(t.subset.begin(), t.subset.end(), static_cast<Index>(x));
    CHECK(counts[x] == (in_a ? 4 : 3));
  }
  const auto back = pds_zero_toggle(g, t.subset);
  CHECK(back.subset == qr);
  CHECK_THROWS_AS(pds_zero_toggle(g, std::vector<Index>{0, 1, 3}), Error);
}

TEST_CASE("reversal") {
  const AbelianGroup g({2, 4});
  CHECK(reversal(g, std::vector<Index>{1, 4}) == std::vector<Index>{3, 4});
}

TEST_CASE("nested chain of the order-8 example") {
  const AbelianGroup g({2, 4});
  const auto s = g.parse_subset("{(0,0),(1,0),(0,1)}");
  const auto c = classify(g, s);
  CHECK_FALSE(c.bidifference.holds);
  REQUIRE(c.nested_divisible);
  const auto& chain = *c.nested_divisible;
  CHECK(chain.t() == 3);
  CHECK(chain.lambdas == std::vector<long>{2, 0, 1});
  CHECK(chain.proper_divisible);
  CHECK(chain.proper_general);
  CHECK(is_proper(chain, difference_counts(g, s)));
  const auto o = test::mirror(g);
  for (const auto& h : chain.sets) CHECK(oracle::closed_subgroup(o, test::ints(h.members)));
}

TEST_CASE("minimal chains agree with dynamic programming over all subgroups") {
  std::mt19937 rng(5);
  int chains = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const AbelianGroup g(oracle::random_factors(rng, 12));
    const int n = static_cast<int>(g.order());
    const int m = std::uniform_int_distribution<int>(2, n)(rng);
    const auto s = oracle::random_subset(rng, n, m);
    const auto chain = nested_divisible_chain(g, test::idx(s));
    const int ref = oracle::min_nested_divisible_t(test::mirror(g), s);
    CAPTURE(g.name());
    CHECK(static_cast<int>(chain ? chain->t() : 0) == ref);
    if (chain) ++chains;
  }
  CHECK(chains > 10);
}

TEST_CASE("relative difference sets have zero count on H") {
  int found = 0;
  for (std::size_t n = 4; n <= 12; ++n) {
    for (const auto& g : abelian_groups_of_order(n)) {
      const auto o = test::mirror(g);
      for (int m = 2; m <= static_cast<int>(n) / 2; ++m) {
        for (const auto& s : oracle::k_subsets(static_cast<int>(n), m)) {
          const auto c = classify(g, test::idx(s));
          if (!c.relative.proper) continue;
          ++found;
          const auto& p = *c.relative.params;
          CHECK(p.lambda == 0);
          CHECK(oracle::closed_subgroup(o, test::ints(p.relative_to)));
          const auto counts = oracle::diff_counts(o, s);
          for (int x = 1; x < static_cast<int>(n); ++x) {
            const bool in_h = std::binary_search(p.relative_to.begin(), p.relative_to.end(), static_cast<Index>(x));
            CHECK(counts[x] == (in_h ? 0 : p.mu));
          }
        }
      }
    }
  }
  CHECK(found > 0);
}

TEST_CASE("classification of the whole group") {
  const AbelianGroup g({2, 3});
  const auto c = classify(g, all_of(g));
  CHECK(c.difference_set);
  CHECK(c.lambda == 6);
}
