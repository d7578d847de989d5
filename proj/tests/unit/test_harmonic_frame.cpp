#include "doctest.h"

#include <random>

#include "framelab/error.hpp"
#include "framelab/harmonic_frame.hpp"
#include "support.hpp"

using namespace framelab;

namespace {

void check_against_oracle(const AbelianGroup& g, const std::vector<Index>& s) {
  const auto profile = angle_profile(FrameSpec(g, s));
  const auto ref = oracle::angles(test::mirror(g), test::ints(s));
  REQUIRE(profile.angles.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK(std::abs(profile.angles[i].value - ref[i].value) < 1e-9);
    CHECK(profile.angles[i].multiplicity == static_cast<std::size_t>(ref[i].count));
  }
}

}  // namespace

TEST_CASE("frame vectors and inner products") {
  const AbelianGroup g({6});
  const FrameSpec f(g, {0, 1, 3});
  const auto o = test::mirror(g);
  for (Index x = 0; x < 6; ++x) {
    const auto v = f.vector(x);
    const auto r = oracle::frame_vector(o, {0, 1, 3}, static_cast<int>(x));
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(v[j] - r[j]) < 1e-12);
    for (Index y = 0; y < 6; ++y) {
      const auto ip = frame_inner_product(f, x, y);
      CHECK(std::abs(ip - oracle::inner(r, oracle::frame_vector(o, {0, 1, 3}, static_cast<int>(y)))) < 1e-12);
    }
  }
}

TEST_CASE("invalid generator lists") {
  const AbelianGroup g({6});
  CHECK_THROWS_AS(FrameSpec(g, {}), Error);
  CHECK_THROWS_AS(FrameSpec(g, {1, 1}), Error);
  CHECK_THROWS_AS(FrameSpec(g, {0, 6}), Error);
}

TEST_CASE("Z6 {0,1,3} is biangular") {
  const FrameSpec f(AbelianGroup({6}), {0, 1, 3});
  const auto p = angle_profile(f, {1e-7, true});
  REQUIRE(p.angles.size() == 2);
  CHECK(p.angles[0].value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(p.angles[1].value == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(p.angles[0].multiplicity == 3);
  CHECK(p.angles[1].multiplicity == 2);
  REQUIRE(p.angles[0].square);
  CHECK(p.angles[0].square->rational == Rational(1, 9));
  CHECK_FALSE(p.ambiguous);
  const auto a = classify_angularity(f);
  CHECK(a.btf);
  CHECK_FALSE(a.etf);
  CHECK(a.d == 2);
}

TEST_CASE("Z9 {0,1,3,4} has four angles") {
  const auto p = angle_profile(FrameSpec(AbelianGroup({9}), {0, 1, 3, 4}));
  CHECK(p.angularity() == 4);
  check_against_oracle(AbelianGroup({9}), {0, 1, 3, 4});
}

TEST_CASE("angles agree with the Gram matrix on random frames") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const AbelianGroup g(oracle::random_factors(rng, 24));
    const int n = static_cast<int>(g.order());
    const int m = std::uniform_int_distribution<int>(1, n)(rng);
    check_against_oracle(g, test::idx(oracle::random_subset(rng, n, m)));
  }
}

TEST_CASE("full character table is orthonormal") {
  const AbelianGroup g({2, 3});
  std::vector<Index> all(6);
  for (Index i = 0; i < 6; ++i) all[i] = i;
  const auto p = angle_profile(FrameSpec(g, all));
  REQUIRE(p.angles.size() == 1);
  CHECK(p.angles[0].value == doctest::Approx(0.0));
  CHECK(classify_angularity(p, true).etf);
}

TEST_CASE("single linkage clustering") {
  const auto p = cluster_angles({0.5, 0.5 + 4e-8, 0.5 + 8e-8, 0.7}, 5, 2, 1e-7);
  REQUIRE(p.angles.size() == 2);
  CHECK(p.angles[0].multiplicity == 3);
  CHECK_FALSE(p.ambiguous);
  const auto q = cluster_angles({0.5, 0.5 + 5e-7}, 3, 2, 1e-7);
  CHECK(q.angles.size() == 2);
  CHECK(q.ambiguous);
}

TEST_CASE("tightness") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const AbelianGroup g(oracle::random_factors(rng, 20));
    const int n = static_cast<int>(g.order());
    const int m = std::uniform_int_distribution<int>(1, n)(rng);
    const FrameSpec f(g, test::idx(oracle::random_subset(rng, n, m)));
    const auto t = verify_tightness(f);
    CHECK(t.tight);
    CHECK(t.frame_bound == doctest::Approx(static_cast<double>(n) / m));
    CHECK(t.max_deviation < 1e-9);
  }
}

TEST_CASE("Welch bound") {
  CHECK(welch_bound(7, 3) == doctest::Approx(std::sqrt(4.0 / 18.0)));
  CHECK(welch_bound(6, 6) == doctest::Approx(0.0));
  CHECK_THROWS_AS(welch_bound(1, 1), Error);
  CHECK_THROWS_AS(welch_bound(5, 0), Error);
}

TEST_CASE("biangular multiplicities from angles") {
  const auto [t1, t2] = btf_multiplicities_from_angles(6, 3, 1.0 / 3.0, 1.0 / std::sqrt(3.0));
  CHECK(t1 == 3);
  CHECK(t2 == 2);
  CHECK_THROWS_AS(btf_multiplicities_from_angles(6, 3, 0.3, 0.4), Error);
}

TEST_CASE("modulation operators") {
  const FrameSpec f(AbelianGroup({2, 4}), {0, 1, 5});
  for (Index xi = 0; xi < 8; ++xi) {
    const auto closed = modulation_operator(f, xi);
    const auto direct = modulation_operator_direct(f, xi);
    for (std::size_t k = 0; k < closed.entries.size(); ++k) CHECK(std::abs(closed.entries[k] - direct.entries[k]) < 1e-9);
  }
  const auto r = verify_modulation_identities(f);
  CHECK(r.passed);
  CHECK(r.max_hs_cross < 1e-9);
}

TEST_CASE("real frames") {
  CHECK(is_real_frame(FrameSpec(AbelianGroup({2, 2, 2}), {0, 1, 2})));
  CHECK(is_real_frame(FrameSpec(AbelianGroup({2, 4}), {0, 2})));
  CHECK_FALSE(is_real_frame(FrameSpec(AbelianGroup({2, 4}), {0, 1})));
}

TEST_CASE("frame from elements") {
  const AbelianGroup g({2, 4});
  const std::vector<Element> gens{{{0, 0}}, {{1, 0}}, {{0, 1}}};
  const auto f = FrameSpec::from_elements(g, gens);
  CHECK(f.dimension() == 3);
  CHECK(std::vector<Index>(f.generators().begin(), f.generators().end()) == std::vector<Index>{0, 4, 1});
}
