#include "stardyn/gen.hpp"

#include <algorithm>
#include <numeric>

namespace stardyn::gen {

Scalar random_scalar(Rng& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Scalar(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

AlgebraElement random_element(Rng& rng, const MultiMatrixAlgebra& a) {
  AlgebraElement e = AlgebraElement::zero(a);
  for (int j = 0; j < a.block_count(); ++j)
    for (int r = 0; r < a.block_dims()[j]; ++r)
      for (int c = 0; c < a.block_dims()[j]; ++c) e.block(j).at(r, c) = random_scalar(rng);
  return e;
}

namespace {

const std::pair<int, int> kPythagorean[] = {{3, 4}, {5, 12}, {8, 15}, {20, 21}};

Scalar unit_phase(Rng& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return Scalar(1);
    case 1: return Scalar(-1);
    case 2: return Scalar::i();
    default: return Scalar(0) - Scalar::i();
  }
}

}  // namespace

Mat random_exact_unitary(Rng& rng, int n) {
  Mat u = Mat::identity(n);
  // phase layer
  for (int i = 0; i < n; ++i) u.at(i, i) = unit_phase(rng);
  // permutation layer
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  u = permutation_matrix(perm) * u;
  // a few exact rotations
  if (n >= 2) {
    std::uniform_int_distribution<int> idx(0, n - 1);
    std::uniform_int_distribution<int> pyth(0, 3);
    int rounds = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int t = 0; t < rounds; ++t) {
      int i = idx(rng), j = idx(rng);
      if (i == j) continue;
      auto [a, b] = kPythagorean[pyth(rng)];
      // (a, b, hyp) is a Pythagorean triple, so a/hyp and b/hyp are exact
      long hyp = [&] {
        long v = 1;
        while (v * v < a * a + b * b) ++v;
        return v;
      }();
      Mat g = Mat::identity(n);
      g.at(i, i) = Scalar(Rational(a, hyp));
      g.at(i, j) = Scalar(Rational(b, hyp));
      g.at(j, i) = Scalar(Rational(-b, hyp));
      g.at(j, j) = Scalar(Rational(a, hyp));
      u = g * u;
    }
  }
  return u;
}

PartialMap random_partial_map(Rng& rng, int max_points) {
  int n = std::uniform_int_distribution<int>(1, max_points)(rng);
  std::uniform_int_distribution<int> img(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 9);
  std::vector<std::optional<int>> images(n);
  for (int x = 0; x < n; ++x)
    if (coin(rng) < 7) images[x] = img(rng);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return PartialMap(std::move(names), std::move(images));
}

StarEndomorphism random_multimatrix_endo(Rng& rng, int max_blocks, int max_dim) {
  int blocks = std::uniform_int_distribution<int>(1, max_blocks)(rng);
  std::vector<int> dims;
  for (int j = 0; j < blocks; ++j)
    dims.push_back(std::uniform_int_distribution<int>(1, max_dim)(rng));
  MultiMatrixAlgebra a(dims);

  std::vector<EndoTargetBlock> targets;
  std::uniform_int_distribution<int> pick(0, blocks - 1);
  std::uniform_int_distribution<int> coin(0, 9);
  for (int j = 0; j < blocks; ++j) {
    EndoTargetBlock t;
    int remaining = dims[j];
    while (remaining > 0 && coin(rng) < 7) {
      // pick any source that still fits
      std::vector<int> fits;
      for (int i = 0; i < blocks; ++i)
        if (dims[i] <= remaining) fits.push_back(i);
      if (fits.empty()) break;
      int i = fits[std::uniform_int_distribution<int>(0, int(fits.size()) - 1)(rng)];
      t.sources.push_back(i);
      remaining -= dims[i];
    }
    t.padding = remaining;
    t.unitary = random_exact_unitary(rng, dims[j]);
    targets.push_back(std::move(t));
  }
  return StarEndomorphism(a, a, std::move(targets));
}

std::vector<AlgebraElement> random_coefficients(Rng& rng, const MultiMatrixAlgebra& a,
                                                int count) {
  std::vector<AlgebraElement> out;
  for (int k = 0; k < count; ++k) out.push_back(random_element(rng, a));
  return out;
}

}  // namespace stardyn::gen
