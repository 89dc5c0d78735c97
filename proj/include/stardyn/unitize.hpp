#ifndef STARDYN_UNITIZE_HPP
#define STARDYN_UNITIZE_HPP

#include "stardyn/finalg.hpp"

namespace stardyn {

/// The largest ideal with zero intersection with I.  For block ideals this is
/// the complementary block set.
Ideal ideal_complement(const MultiMatrixAlgebra& a, const Ideal& i);

/// A+ = (A/I) (+) (A/I_perp) for I = ker delta, together with the natural
/// embedding and the extension of delta whose kernel is unital by
/// construction.  In finite dimensions the embedding is always bijective.
struct UnitizedSystem {
  MultiMatrixAlgebra aplus;
  StarEndomorphism delta_plus;     // endomorphism of aplus
  ProjectionElement kernel_unit_plus;  // (0 + I) (+) (1 + I_perp)
  ProjectionElement p_plus;            // image of p = 1 - q
  Ideal i;        // ker delta in A
  Ideal i_perp;   // its complement

  /// a |-> (a + I) (+) (a + I_perp).
  AlgebraElement embed(const AlgebraElement& a) const;
  /// Inverse of embed (total here because finite-dimensional ideals are unital).
  AlgebraElement embed_inverse(const AlgebraElement& b) const;

private:
  friend UnitizedSystem unitize_kernel(const StarEndomorphism& phi);
  MultiMatrixAlgebra base_;
  std::vector<int> part1_;  // blocks of A surviving in A/I  (complement of I)
  std::vector<int> part2_;  // blocks of A surviving in A/I_perp (= I)
};

UnitizedSystem unitize_kernel(const StarEndomorphism& phi);

}  // namespace stardyn

#endif
