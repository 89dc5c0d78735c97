#include "stardyn/matrix.hpp"

#include <algorithm>

namespace stardyn {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

bool Mat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Mat Mat::adjoint() const {
  Mat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
  return r;
}

Scalar Mat::trace() const {
  Scalar t;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
  return t;
}

Mat& Mat::operator+=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix shape mismatch in *");
  Mat r(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b.at(k, j);
        if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

Mat operator*(const Scalar& s, Mat a) {
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) a.at(i, j) *= s;
  return a;
}

Mat block_diag(const std::vector<Mat>& blocks, int pad) {
  int n = pad;
  for (const Mat& b : blocks) {
    if (!b.is_square()) throw InputError("block_diag expects square blocks");
    n += b.rows();
  }
  Mat r(n, n);
  int off = 0;
  for (const Mat& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) r.at(off + i, off + j) = b.at(i, j);
    off += b.rows();
  }
  return r;
}

Mat permutation_matrix(const std::vector<int>& perm) {
  int n = int(perm.size());
  Mat p(n, n);
  for (int i = 0; i < n; ++i) p.at(i, perm[i]) = Scalar(1);
  return p;
}

int rank(Mat m) {
  int r = 0;
  for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(piv, j));
    for (int i = r + 1; i < m.rows(); ++i) {
      if (m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col) / m.at(r, col);
      for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

bool is_psd(const Mat& h) {
  if (!h.is_square()) return false;
  int n = h.rows();
  if (h != h.adjoint()) return false;
  Mat m = h;
  std::vector<int> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;
  while (!active.empty()) {
    int piv = -1;
    bool any_nonzero = false;
    for (int idx : active) {
      if (!m.at(idx, idx).is_zero() && piv < 0) piv = idx;
      for (int jdx : active)
        if (!m.at(idx, jdx).is_zero()) any_nonzero = true;
    }
    if (!any_nonzero) return true;
    if (piv < 0) return false;  // zero diagonal with nonzero off-diagonal entry
    const Scalar d = m.at(piv, piv);
    if (!d.is_real() || d.re() < 0) return false;
    std::vector<int> rest;
    for (int idx : active)
      if (idx != piv) rest.push_back(idx);
    for (int i : rest)
      for (int j : rest) {
        if (m.at(i, piv).is_zero() || m.at(piv, j).is_zero()) continue;
        m.at(i, j) -= m.at(i, piv) * m.at(piv, j) / d;
      }
    active = std::move(rest);
  }
  return true;
}

namespace {

void pad_to(Vec& v, std::size_t n) {
  if (v.size() < n) v.resize(n);
}

}  // namespace

bool SpanBuilder::add(Vec v) {
  if (v.size() != width_) throw InputError("SpanBuilder width mismatch");
  Vec combo;  // coefficients over accepted inputs
  pad_to(combo, rows_.size() + 1);
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    const Scalar& lead = v[pivots_[j]];
    if (lead.is_zero()) continue;
    Scalar f = lead;  // echelon rows normalised to leading 1
    for (std::size_t k = 0; k < width_; ++k) v[k] -= f * rows_[j][k];
    for (std::size_t k = 0; k < history_[j].size(); ++k) combo[k] -= f * history_[j][k];
  }
  int pivot = -1;
  for (std::size_t k = 0; k < width_; ++k)
    if (!v[k].is_zero()) {
      pivot = int(k);
      break;
    }
  if (pivot < 0) return false;
  Scalar inv = Scalar(1) / v[pivot];
  for (auto& x : v) x *= inv;
  // reduced = input + sum(combo_k * accepted_k); rescale and record the input's
  // own coefficient so history rows always express echelon rows in inputs.
  for (std::size_t k = 0; k + 1 < combo.size(); ++k) combo[k] *= inv;
  combo[rows_.size()] = inv;
  rows_.push_back(std::move(v));
  pivots_.push_back(pivot);
  history_.push_back(std::move(combo));
  return true;
}

bool SpanBuilder::contains(Vec v) const {
  if (v.size() != width_) throw InputError("SpanBuilder width mismatch");
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    const Scalar& lead = v[pivots_[j]];
    if (lead.is_zero()) continue;
    Scalar f = lead;
    for (std::size_t k = 0; k < width_; ++k) v[k] -= f * rows_[j][k];
  }
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::optional<Vec> SpanBuilder::coordinates(const Vec& v0) const {
  if (v0.size() != width_) throw InputError("SpanBuilder width mismatch");
  Vec v = v0;
  Vec coeff(rows_.size());
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    const Scalar& lead = v[pivots_[j]];
    if (lead.is_zero()) continue;
    Scalar f = lead;
    coeff[j] = f;
    for (std::size_t k = 0; k < width_; ++k) v[k] -= f * rows_[j][k];
  }
  if (!std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); }))
    return std::nullopt;
  Vec out(rows_.size());
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    if (coeff[j].is_zero()) continue;
    for (std::size_t k = 0; k < history_[j].size(); ++k) out[k] += coeff[j] * history_[j][k];
  }
  return out;
}

LinearSolver::LinearSolver(std::vector<Vec> columns, std::size_t nrows_hint) {
  ncols_ = columns.size();
  nrows_ = columns.empty() ? nrows_hint : columns[0].size();
  for (const Vec& c : columns)
    if (c.size() != nrows_) throw InputError("LinearSolver: ragged columns");
  // Row-major working copy of A plus the transformation matrix T (starts as I).
  std::vector<Vec> a(nrows_, Vec(ncols_));
  std::vector<Vec> t(nrows_, Vec(nrows_));
  for (std::size_t i = 0; i < nrows_; ++i) {
    t[i][i] = Scalar(1);
    for (std::size_t j = 0; j < ncols_; ++j) a[i][j] = columns[j][i];
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols_ && row < nrows_; ++col) {
    std::size_t piv = row;
    while (piv < nrows_ && a[piv][col].is_zero()) ++piv;
    if (piv == nrows_) continue;
    std::swap(a[piv], a[row]);
    std::swap(t[piv], t[row]);
    Scalar inv = Scalar(1) / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (auto& x : t[row]) x *= inv;
    for (std::size_t i = 0; i < nrows_; ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      Scalar f = a[i][col];
      for (std::size_t j = 0; j < ncols_; ++j) a[i][j] -= f * a[row][j];
      for (std::size_t j = 0; j < nrows_; ++j) t[i][j] -= f * t[row][j];
    }
    pivot_cols_.push_back(int(col));
    ++row;
  }
  rank_ = int(row);
  reduced_ = std::move(a);
  ident_part_ = std::move(t);
}

std::optional<Vec> LinearSolver::solve(const Vec& rhs) const {
  if (rhs.size() != nrows_) throw InputError("LinearSolver: rhs size mismatch");
  Vec c(nrows_);
  for (std::size_t i = 0; i < nrows_; ++i)
    for (std::size_t j = 0; j < nrows_; ++j)
      if (!ident_part_[i][j].is_zero() && !rhs[j].is_zero()) c[i] += ident_part_[i][j] * rhs[j];
  for (std::size_t i = rank_; i < nrows_; ++i)
    if (!c[i].is_zero()) return std::nullopt;
  Vec x(ncols_);
  for (int r = 0; r < rank_; ++r) x[pivot_cols_[r]] = c[r];
  return x;
}

std::vector<Vec> LinearSolver::kernel_basis() const {
  std::vector<bool> is_pivot(ncols_, false);
  for (int p : pivot_cols_) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < ncols_; ++f) {
    if (is_pivot[f]) continue;
    Vec v(ncols_);
    v[f] = Scalar(1);
    for (int r = 0; r < rank_; ++r) v[pivot_cols_[r]] = -reduced_[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace stardyn
