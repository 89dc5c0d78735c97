#ifndef STARDYN_TESTS_FIXTURES_HPP
#define STARDYN_TESTS_FIXTURES_HPP

#include <map>
#include <optional>
#include <vector>

#include "stardyn/finalg.hpp"

namespace stardyn::testing {

/// Hand-built commutative endomorphism delta(a)(x) = a(map[x]) (0 off the
/// domain).  Kept independent of the pdsys construction so the two can be
/// cross-checked.
inline StarEndomorphism commutative_endo(int npoints,
                                         const std::map<int, int>& images) {
  MultiMatrixAlgebra a(std::vector<int>(npoints, 1));
  std::vector<EndoTargetBlock> targets;
  for (int x = 0; x < npoints; ++x) {
    auto it = images.find(x);
    if (it != images.end())
      targets.push_back({{it->second}, 0, Mat::identity(1)});
    else
      targets.push_back({{}, 1, Mat::identity(1)});
  }
  return StarEndomorphism(a, a, std::move(targets));
}

// The four bundled systems.
inline StarEndomorphism endo_id() { return commutative_endo(1, {{0, 0}}); }
inline StarEndomorphism endo_const3() { return commutative_endo(3, {{0, 0}, {1, 0}, {2, 0}}); }
inline StarEndomorphism endo_shift3() { return commutative_endo(3, {{0, 1}, {1, 2}}); }
inline StarEndomorphism endo_merge() { return commutative_endo(3, {{0, 0}, {1, 0}, {2, 1}}); }

inline AlgebraElement diag(const MultiMatrixAlgebra& a, std::vector<int> vals) {
  std::vector<Scalar> coords(vals.begin(), vals.end());
  return AlgebraElement::diagonal(a, coords);
}

}  // namespace stardyn::testing

#endif
