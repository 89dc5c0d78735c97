#ifndef STARDYN_MATRIX_HPP
#define STARDYN_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "stardyn/scalar.hpp"

namespace stardyn {

/// Dense matrix over the Gaussian rationals.  Sizes in this project are tiny
/// (block dimensions of multi-matrix algebras), so everything is exact and
/// unoptimised.
class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  static Mat identity(int n);
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  const Scalar& at(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  Mat adjoint() const;
  Scalar trace() const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator*(const Scalar& s, Mat a);
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  const std::vector<Scalar>& data() const { return data_; }

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> data_;
};

using Vec = std::vector<Scalar>;

/// blockdiag(blocks[0], ..., blocks[k-1], 0_pad).
Mat block_diag(const std::vector<Mat>& blocks, int pad);

/// Permutation matrix P with (P x)[i] = x[perm[i]].
Mat permutation_matrix(const std::vector<int>& perm);

int rank(Mat m);

/// Exact positive-semidefiniteness test for a Hermitian matrix via pivoted
/// rational LDL*.  Non-Hermitian input returns false.
bool is_psd(const Mat& h);

/// Incremental row-space builder; add() returns true when the vector enlarged
/// the span.  Keeps an echelon form for exact membership tests.
class SpanBuilder {
public:
  explicit SpanBuilder(std::size_t width) : width_(width) {}

  bool add(Vec v);
  bool contains(Vec v) const;
  int dim() const { return int(rows_.size()); }
  std::size_t width() const { return width_; }

  /// Coordinates of v in terms of the vectors previously accepted by add(),
  /// or nullopt when v lies outside the span.
  std::optional<Vec> coordinates(const Vec& v) const;

private:
  std::size_t width_;
  std::vector<Vec> rows_;        // echelon rows
  std::vector<int> pivots_;      // pivot column of each echelon row
  std::vector<Vec> history_;     // expresses echelon rows in accepted inputs
};

/// Exact solver for A x = b with A given by columns; also exposes the kernel.
class LinearSolver {
public:
  /// nrows_hint disambiguates the codomain when no columns are given.
  explicit LinearSolver(std::vector<Vec> columns, std::size_t nrows_hint = 0);

  std::optional<Vec> solve(const Vec& rhs) const;
  int rank() const { return rank_; }
  int domain_dim() const { return int(ncols_); }
  std::vector<Vec> kernel_basis() const;

private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  int rank_ = 0;
  std::vector<Vec> reduced_;      // RREF of [A | I] rows, width nrows_+... see impl
  std::vector<int> pivot_cols_;
  std::vector<Vec> ident_part_;   // row ops applied to identity (for solve)
};

}  // namespace stardyn

#endif
