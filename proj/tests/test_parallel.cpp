#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stardyn/gen.hpp"
#include "stardyn/verify.hpp"

using namespace stardyn;

TEST_CASE("generators produce valid systems") {
  gen::Rng rng(2718);
  int complete = 0, incomplete = 0, unital = 0, nonunital = 0;
  for (int t = 0; t < 120; ++t) {
    // construction validates the Bratteli bookkeeping and exact unitarity
    StarEndomorphism phi = gen::random_multimatrix_endo(rng, 3, 3);
    EndoClassification cls = classify(phi);
    (cls.complete ? complete : incomplete) += 1;
    (cls.unital ? unital : nonunital) += 1;
    AlgebraElement a = gen::random_element(rng, phi.source());
    AlgebraElement b = gen::random_element(rng, phi.source());
    CHECK(phi.apply(a * b) == phi.apply(a) * phi.apply(b));
  }
  // the population must exercise both sides of the dichotomies
  CHECK(complete > 0);
  CHECK(incomplete > 0);
  CHECK(unital > 0);
  CHECK(nonunital > 0);
}

TEST_CASE("random unitaries are exactly unitary") {
  gen::Rng rng(577);
  for (int n = 1; n <= 4; ++n)
    for (int t = 0; t < 25; ++t) {
      Mat u = gen::random_exact_unitary(rng, n);
      CHECK(u.adjoint() * u == Mat::identity(n));
      CHECK(u * u.adjoint() == Mat::identity(n));
    }
}

TEST_CASE("serial and openmp batch drivers agree") {
  gen::Rng rng(424243);
  std::vector<PartialMap> maps;
  for (int i = 0; i < 12; ++i) maps.push_back(gen::random_partial_map(rng, 6));
  std::vector<StarEndomorphism> endos;
  for (int i = 0; i < 4; ++i) endos.push_back(gen::random_multimatrix_endo(rng, 3, 3));

  VerifyOptions opt;
  opt.tower_levels = 3;
  opt.spectral_depth = 3;
  opt.rep_depth = 3;

  auto maps_serial = verify_map_batch(maps, opt, par::Mode::serial);
  auto maps_omp = verify_map_batch(maps, opt, par::Mode::openmp);
  REQUIRE(maps_serial.size() == maps_omp.size());
  for (std::size_t i = 0; i < maps_serial.size(); ++i) {
    CHECK(maps_serial[i] == maps_omp[i]);
    CHECK(maps_serial[i].ok());
  }

  auto endos_serial = verify_endo_batch(endos, opt, par::Mode::serial);
  auto endos_omp = verify_endo_batch(endos, opt, par::Mode::openmp);
  for (std::size_t i = 0; i < endos_serial.size(); ++i) {
    CHECK(endos_serial[i] == endos_omp[i]);
    CHECK(endos_serial[i].ok());
  }
}
