#ifndef STARDYN_FINALG_HPP
#define STARDYN_FINALG_HPP

#include <set>
#include <string>
#include <vector>

#include "stardyn/matrix.hpp"

namespace stardyn {

/// A finite-dimensional C*-algebra: a direct sum of full matrix blocks,
/// described by its block dimensions.
class MultiMatrixAlgebra {
public:
  MultiMatrixAlgebra() = default;
  explicit MultiMatrixAlgebra(std::vector<int> block_dims);

  const std::vector<int>& block_dims() const { return dims_; }
  int block_count() const { return int(dims_.size()); }
  int dim() const { return dim_; }
  bool commutative() const;

  friend bool operator==(const MultiMatrixAlgebra& a, const MultiMatrixAlgebra& b) {
    return a.dims_ == b.dims_;
  }
  friend bool operator!=(const MultiMatrixAlgebra& a, const MultiMatrixAlgebra& b) {
    return !(a == b);
  }

private:
  std::vector<int> dims_;
  int dim_ = 0;
};

/// An element of a multi-matrix algebra: one matrix per block.
class AlgebraElement {
public:
  AlgebraElement() = default;
  AlgebraElement(MultiMatrixAlgebra algebra, std::vector<Mat> blocks);

  static AlgebraElement zero(const MultiMatrixAlgebra& a);
  static AlgebraElement one(const MultiMatrixAlgebra& a);
  /// Matrix unit E_rs in the given block, zero elsewhere.
  static AlgebraElement matrix_unit(const MultiMatrixAlgebra& a, int block, int r, int s);
  /// Convenience for commutative algebras: diagonal from a coordinate list.
  static AlgebraElement diagonal(const MultiMatrixAlgebra& a, const std::vector<Scalar>& coords);

  const MultiMatrixAlgebra& algebra() const { return algebra_; }
  const Mat& block(int j) const { return blocks_[j]; }
  Mat& block(int j) { return blocks_[j]; }

  bool is_zero() const;
  AlgebraElement star() const;
  Scalar trace() const;

  /// Coordinate of a commutative element at a point (block index).
  const Scalar& coord(int j) const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const Scalar& s, AlgebraElement a);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.algebra_ == b.algebra_ && a.blocks_ == b.blocks_;
  }
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

  /// Flatten to the fixed coordinate vector (blocks in order, row-major).
  Vec vectorize() const;
  static AlgebraElement from_vector(const MultiMatrixAlgebra& a, const Vec& v);

  std::string str() const;

private:
  MultiMatrixAlgebra algebra_;
  std::vector<Mat> blocks_;
};

/// Enumerates the matrix-unit basis of the algebra in vectorization order.
std::vector<AlgebraElement> matrix_unit_basis(const MultiMatrixAlgebra& a);

/// A self-adjoint idempotent, validated on construction.
class ProjectionElement {
public:
  ProjectionElement() = default;
  explicit ProjectionElement(AlgebraElement e);

  const AlgebraElement& element() const { return e_; }
  /// Rank of the block-j component.
  int block_rank(int j) const;
  bool is_central() const;

  friend bool operator==(const ProjectionElement& a, const ProjectionElement& b) {
    return a.e_ == b.e_;
  }
  friend bool operator!=(const ProjectionElement& a, const ProjectionElement& b) {
    return !(a == b);
  }

private:
  AlgebraElement e_;
};

/// A two-sided closed ideal of a multi-matrix algebra: a subset of blocks.
class Ideal {
public:
  Ideal() = default;
  Ideal(MultiMatrixAlgebra algebra, std::set<int> blocks);

  const MultiMatrixAlgebra& algebra() const { return algebra_; }
  const std::set<int>& blocks() const { return blocks_; }
  int dim() const;
  bool contains(const AlgebraElement& a) const;
  /// Sum of the block identities: the unit of the ideal.
  ProjectionElement unit() const;

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.algebra_ == b.algebra_ && a.blocks_ == b.blocks_;
  }

private:
  MultiMatrixAlgebra algebra_;
  std::set<int> blocks_;
};

/// One target block of a *-homomorphism in Bratteli normal form.
struct EndoTargetBlock {
  std::vector<int> sources;  // ordered source-block multiplicity list
  int padding = 0;           // trailing zero block size
  Mat unitary;               // conjugating unitary of the target block
};

/// A *-homomorphism between multi-matrix algebras, encoded per target block
/// as a multiplicity list, zero padding and a unitary conjugator.  The encoding
/// makes linearity, multiplicativity and *-preservation true by construction;
/// unitarity of the conjugators is validated exactly.
class StarEndomorphism {
public:
  StarEndomorphism() = default;
  StarEndomorphism(MultiMatrixAlgebra source, MultiMatrixAlgebra target,
                   std::vector<EndoTargetBlock> targets);

  static StarEndomorphism identity(const MultiMatrixAlgebra& a);

  const MultiMatrixAlgebra& source() const { return source_; }
  const MultiMatrixAlgebra& target() const { return target_; }
  const std::vector<EndoTargetBlock>& targets() const { return targets_; }
  bool is_endo() const { return source_ == target_; }

  AlgebraElement apply(const AlgebraElement& a) const;

private:
  MultiMatrixAlgebra source_;
  MultiMatrixAlgebra target_;
  std::vector<EndoTargetBlock> targets_;
};

AlgebraElement apply_endo(const StarEndomorphism& phi, const AlgebraElement& a);

/// Composition phi o psi in Bratteli normal form.
StarEndomorphism compose_endo(const StarEndomorphism& phi, const StarEndomorphism& psi);

/// delta^n(1) as a projection.
ProjectionElement power_of_unit(const StarEndomorphism& phi, int n);

/// The kernel ideal (source blocks of total multiplicity zero) and its unit q.
Ideal kernel_ideal(const StarEndomorphism& phi);
ProjectionElement kernel_unit(const StarEndomorphism& phi);

struct CornerAlgebra {
  MultiMatrixAlgebra corner;           // block dims = positive per-block ranks of e
  std::vector<int> block_ranks;        // per original block (zeros kept)
  ProjectionElement e;
  AlgebraElement compress(const AlgebraElement& a) const;  // e a e, full size
  const AlgebraElement& embed(const AlgebraElement& a) const;  // inclusion
};

/// The corner algebra e A e of a projection, reported through per-block ranks.
CornerAlgebra corner_algebra(const MultiMatrixAlgebra& a, const ProjectionElement& e);

/// dim of the linear span of delta(A).
int image_dim(const StarEndomorphism& phi);

/// Whether delta(A) equals the corner delta(1) A delta(1).
bool is_hereditary_range(const StarEndomorphism& phi);

struct EndoClassification {
  bool mono = false;
  bool epi = false;
  bool aut = false;
  bool unital = false;           // delta(1) == 1
  bool unital_kernel = false;    // always true in finite dimensions
  bool hereditary_range = false;
  bool complete = false;
};

EndoClassification classify(const StarEndomorphism& phi);

/// All 2^B sums of block identities.  Refuses block counts above the guard.
std::vector<ProjectionElement> central_projections(const MultiMatrixAlgebra& a,
                                                   int max_blocks = 20);

}  // namespace stardyn

#endif
