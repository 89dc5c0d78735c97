#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stardyn/pdsys.hpp"
#include "stardyn/transfer.hpp"
#include "support/fixtures.hpp"

using namespace stardyn;
using namespace stardyn::testing;

namespace {

std::vector<std::string> pts(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

PartialMap map_id() { return PartialMap(pts(1), {0}); }
PartialMap map_const3() { return PartialMap(pts(3), {0, 0, 0}); }
PartialMap map_shift3() { return PartialMap(pts(3), {1, 2, std::nullopt}); }
PartialMap map_merge() { return PartialMap(pts(3), {0, 0, 1}); }

std::mt19937_64 rng(1729);

PartialMap random_map(int max_points) {
  std::uniform_int_distribution<int> npts(1, max_points);
  int n = npts(rng);
  std::uniform_int_distribution<int> img(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 9);
  std::vector<std::optional<int>> images(n);
  for (int x = 0; x < n; ++x)
    if (coin(rng) < 7) images[x] = img(rng);
  return PartialMap(pts(n), std::move(images));
}

}  // namespace

TEST_CASE("induced endomorphism matches the hand-built fixtures") {
  auto same = [](const StarEndomorphism& a, const StarEndomorphism& b) {
    for (const AlgebraElement& u : matrix_unit_basis(a.source()))
      if (a.apply(u) != b.apply(u)) return false;
    return true;
  };
  CHECK(same(induced_endomorphism(map_id()), endo_id()));
  CHECK(same(induced_endomorphism(map_const3()), endo_const3()));
  CHECK(same(induced_endomorphism(map_shift3()), endo_shift3()));
  CHECK(same(induced_endomorphism(map_merge()), endo_merge()));
}

TEST_CASE("induced endomorphism worked examples") {
  auto s3 = induced_endomorphism(map_shift3());
  CHECK(s3.apply(diag(s3.source(), {2, 3, 5})) == diag(s3.source(), {3, 5, 0}));

  auto id = induced_endomorphism(map_id());
  CHECK(id.apply(diag(id.source(), {9})) == diag(id.source(), {9}));

  auto c3 = induced_endomorphism(map_const3());
  CHECK(c3.apply(diag(c3.source(), {2, 3, 5})) == diag(c3.source(), {2, 2, 2}));
}

TEST_CASE("domain iterates") {
  DomainIterates s3 = iterate_domains(map_shift3(), 3);
  CHECK(s3.forward[1] == std::set<int>{0, 1});
  CHECK(s3.forward[2] == std::set<int>{0});
  CHECK(s3.forward[3] == std::set<int>{});

  DomainIterates mg = iterate_domains(map_merge(), 3);
  for (int k = 0; k <= 3; ++k) CHECK(mg.forward[k] == std::set<int>{0, 1, 2});
  CHECK(mg.backward[1] == std::set<int>{0, 1});
  CHECK(mg.backward[2] == std::set<int>{0});
  CHECK(mg.backward[3] == std::set<int>{0});
}

TEST_CASE("duality report on fixtures") {
  auto s3 = duality_report(map_shift3());
  CHECK(s3[4].map_side);
  CHECK(s3[4].algebra_side);
  CHECK_FALSE(s3[0].map_side);  // alpha not surjective

  auto c3 = duality_report(map_const3());
  CHECK_FALSE(c3[0].map_side);
  CHECK_FALSE(c3[0].algebra_side);
  CHECK_FALSE(c3[4].algebra_side);

  auto id = duality_report(map_id());
  for (const auto& row : id) {
    CHECK(row.map_side);
    CHECK(row.algebra_side);
  }
}

TEST_CASE("duality biconditionals hold on random maps") {
  for (int t = 0; t < 120; ++t) {
    PartialMap m = random_map(7);
    CHECK_NOTHROW((void)duality_report(m));  // throws on any mismatch
  }
}

TEST_CASE("kernel unit is the indicator of the complement of the range") {
  for (int t = 0; t < 60; ++t) {
    PartialMap m = random_map(7);
    StarEndomorphism delta = induced_endomorphism(m);
    AlgebraElement q = kernel_unit(delta).element();
    std::set<int> rng_set = m.range();
    for (int x = 0; x < m.size(); ++x)
      CHECK(q.coord(x) == (rng_set.count(x) ? Scalar(0) : Scalar(1)));
    EndoClassification cls = classify(delta);
    CHECK(cls.unital == m.total());
  }
}

TEST_CASE("periodic points") {
  Cycles mg = periodic_points(map_merge());
  REQUIRE(mg.orbits.size() == 1);
  CHECK(mg.orbits[0] == std::vector<int>{0});
  CHECK(mg.points().size() == 1);

  CHECK(periodic_points(map_shift3()).orbits.empty());

  Cycles id = periodic_points(map_id());
  REQUIRE(id.orbits.size() == 1);
  CHECK(id.orbits[0] == std::vector<int>{0});

  PartialMap three(pts(4), {1, 2, 0, std::nullopt});
  Cycles c = periodic_points(three);
  REQUIRE(c.orbits.size() == 1);
  CHECK(c.orbits[0] == std::vector<int>{0, 1, 2});
  // forward ordering within the orbit
  for (int i = 0; i < 3; ++i)
    CHECK(three.image(c.orbits[0][i]) == c.orbits[0][(i + 1) % 3]);
  CHECK(c.locate(2).has_value());
  CHECK_FALSE(c.locate(3).has_value());
}

TEST_CASE("cycle points admit arbitrarily long anti-orbits") {
  for (int t = 0; t < 40; ++t) {
    PartialMap m = random_map(7);
    Cycles cyc = periodic_points(m);
    DomainIterates it = iterate_domains(m, 2 * m.size());
    std::set<int> core;  // stabilised backward image
    core = it.backward[2 * m.size()];
    std::set<int> cycle_points;
    for (const auto& orbit : cyc.orbits) cycle_points.insert(orbit.begin(), orbit.end());
    CHECK(core == cycle_points);
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS((void)PartialMap({"a", "a"}, {std::nullopt, std::nullopt}), InputError);
  CHECK_THROWS_AS((void)PartialMap({"a"}, {5}), InputError);
  CHECK_THROWS_AS(map_shift3().image(2), DomainError);
}
