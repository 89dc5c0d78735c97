#ifndef STARDYN_GEN_HPP
#define STARDYN_GEN_HPP

#include <random>

#include "stardyn/finalg.hpp"
#include "stardyn/pdsys.hpp"

namespace stardyn::gen {

using Rng = std::mt19937_64;

/// Small Gaussian rational with bounded numerators and denominators.
Scalar random_scalar(Rng& rng, int max_num = 3, int max_den = 2);

AlgebraElement random_element(Rng& rng, const MultiMatrixAlgebra& a);

/// An exact unitary: a product of permutations, fourth-root-of-unity phases
/// and rational rotations built from Pythagorean pairs.
Mat random_exact_unitary(Rng& rng, int n);

PartialMap random_partial_map(Rng& rng, int max_points);

/// Bratteli-normal-form endomorphism of a random multi-matrix algebra.
StarEndomorphism random_multimatrix_endo(Rng& rng, int max_blocks, int max_dim);

std::vector<AlgebraElement> random_coefficients(Rng& rng, const MultiMatrixAlgebra& a,
                                                int count);

}  // namespace stardyn::gen

#endif
