#ifndef STARDYN_TRANSFER_HPP
#define STARDYN_TRANSFER_HPP

#include <optional>
#include <string>

#include "stardyn/finalg.hpp"

namespace stardyn {

/// A linear map on a multi-matrix algebra, stored as its matrix in the
/// matrix-unit basis.  Positivity and the transfer identity are properties to
/// be checked, never assumed.
class LinearMap {
public:
  LinearMap() = default;
  LinearMap(MultiMatrixAlgebra algebra, Mat matrix);

  static LinearMap identity_map(const MultiMatrixAlgebra& a);
  static LinearMap zero_map(const MultiMatrixAlgebra& a);
  /// Column-by-column from images of the matrix-unit basis.
  static LinearMap from_images(const MultiMatrixAlgebra& a,
                               const std::vector<AlgebraElement>& images);
  static LinearMap from_endo(const StarEndomorphism& phi);

  const MultiMatrixAlgebra& algebra() const { return algebra_; }
  const Mat& matrix() const { return matrix_; }

  AlgebraElement apply(const AlgebraElement& a) const;

  friend bool operator==(const LinearMap& a, const LinearMap& b) {
    return a.algebra_ == b.algebra_ && a.matrix_ == b.matrix_;
  }
  friend bool operator!=(const LinearMap& a, const LinearMap& b) { return !(a == b); }

private:
  MultiMatrixAlgebra algebra_;
  Mat matrix_;
};

LinearMap compose(const LinearMap& f, const LinearMap& g);

/// Positivity test.  Exact (entrywise) for commutative algebras; for matrix
/// blocks it checks tau(x*x) >= 0 by rational LDL* on the matrix-unit family
/// plus seeded pseudo-random elements, which is sound at this scale.
bool is_positive_map(const LinearMap& tau);

bool is_star_preserving(const LinearMap& tau);

/// Transfer-operator axioms: *-preserving, positive, and
/// tau(delta(a) b) = a tau(b) on all pairs of basis elements.
bool is_transfer(const StarEndomorphism& phi, const LinearMap& tau);

/// Non-degeneracy, decided through conditions (ii) delta tau delta = delta and
/// (iii) delta(tau(1)) = delta(1); the two are evaluated independently and
/// must agree.
bool is_nondegenerate(const StarEndomorphism& phi, const LinearMap& tau);

/// The trace-orthogonal non-degenerate transfer operator, which exists for
/// every finite-dimensional system.
LinearMap canonical_nondegenerate_transfer(const StarEndomorphism& phi);

class NotCompleteError : public std::runtime_error {
public:
  enum class Reason { kernel_not_unital, range_not_hereditary };
  NotCompleteError(Reason r, const std::string& what) : std::runtime_error(what), reason(r) {}
  Reason reason;
};

/// tau(a) = delta^{-1}(delta(1) a delta(1)) for complete systems; throws
/// NotCompleteError naming the failed condition otherwise.
LinearMap complete_transfer(const StarEndomorphism& phi);

struct CompletenessReport {
  bool item_i = false;    // unital kernel and hereditary range
  bool item_ii = false;   // some transfer satisfies delta tau(a) = delta(1) a delta(1)
  bool item_iii = false;  // non-degenerate transfer exists and range hereditary
  bool item_iv = false;   // central projection p with delta: pA -> delta(A) iso
  bool complete = false;
  ProjectionElement q;                       // kernel unit
  std::optional<ProjectionElement> witness_p;  // the projection from (iv)
  std::optional<LinearMap> transfer;           // the complete transfer when it exists
};

/// Decides the four equivalent completeness criteria independently and
/// asserts their agreement (and the witness identity p = tau(1) = 1 - q).
CompletenessReport completeness_report(const StarEndomorphism& phi);

/// E = delta o tau, verified to be a conditional expectation onto delta(A):
/// idempotent, positive, and E(x a y) = x E(a) y for x, y spanning delta(A).
LinearMap conditional_expectation(const StarEndomorphism& phi, const LinearMap& tau);

/// Trace inner product sum_j tr(x_j* y_j).
Scalar trace_inner(const AlgebraElement& x, const AlgebraElement& y);

}  // namespace stardyn

#endif
