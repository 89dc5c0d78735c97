#include "stardyn/finalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace stardyn {

MultiMatrixAlgebra::MultiMatrixAlgebra(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
  for (int n : dims_) {
    if (n <= 0) throw InputError("block dimensions must be positive");
    dim_ += n * n;
  }
}

bool MultiMatrixAlgebra::commutative() const {
  return std::all_of(dims_.begin(), dims_.end(), [](int n) { return n == 1; });
}

AlgebraElement::AlgebraElement(MultiMatrixAlgebra algebra, std::vector<Mat> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (int(blocks_.size()) != algebra_.block_count())
    throw InputError("element block count mismatch");
  for (int j = 0; j < algebra_.block_count(); ++j) {
    int n = algebra_.block_dims()[j];
    if (blocks_[j].rows() != n || blocks_[j].cols() != n)
      throw InputError("element block shape mismatch");
  }
}

AlgebraElement AlgebraElement::zero(const MultiMatrixAlgebra& a) {
  std::vector<Mat> blocks;
  for (int n : a.block_dims()) blocks.push_back(Mat::zero(n, n));
  return AlgebraElement(a, std::move(blocks));
}

AlgebraElement AlgebraElement::one(const MultiMatrixAlgebra& a) {
  std::vector<Mat> blocks;
  for (int n : a.block_dims()) blocks.push_back(Mat::identity(n));
  return AlgebraElement(a, std::move(blocks));
}

AlgebraElement AlgebraElement::matrix_unit(const MultiMatrixAlgebra& a, int block, int r, int s) {
  AlgebraElement e = zero(a);
  e.blocks_[block].at(r, s) = Scalar(1);
  return e;
}

AlgebraElement AlgebraElement::diagonal(const MultiMatrixAlgebra& a,
                                        const std::vector<Scalar>& coords) {
  if (!a.commutative() || int(coords.size()) != a.block_count())
    throw InputError("diagonal() expects a commutative algebra and matching coords");
  AlgebraElement e = zero(a);
  for (int j = 0; j < a.block_count(); ++j) e.blocks_[j].at(0, 0) = coords[j];
  return e;
}

bool AlgebraElement::is_zero() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Mat& m) { return m.is_zero(); });
}

AlgebraElement AlgebraElement::star() const {
  std::vector<Mat> blocks;
  for (const Mat& m : blocks_) blocks.push_back(m.adjoint());
  return AlgebraElement(algebra_, std::move(blocks));
}

Scalar AlgebraElement::trace() const {
  Scalar t;
  for (const Mat& m : blocks_) t += m.trace();
  return t;
}

const Scalar& AlgebraElement::coord(int j) const {
  if (!algebra_.commutative()) throw InputError("coord() requires a commutative algebra");
  return blocks_[j].at(0, 0);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (algebra_ != o.algebra_) throw InputError("algebra mismatch in +");
  for (std::size_t j = 0; j < blocks_.size(); ++j) blocks_[j] += o.blocks_[j];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  if (algebra_ != o.algebra_) throw InputError("algebra mismatch in -");
  for (std::size_t j = 0; j < blocks_.size(); ++j) blocks_[j] -= o.blocks_[j];
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.algebra_ != b.algebra_) throw InputError("algebra mismatch in *");
  std::vector<Mat> blocks;
  for (std::size_t j = 0; j < a.blocks_.size(); ++j) blocks.push_back(a.blocks_[j] * b.blocks_[j]);
  return AlgebraElement(a.algebra_, std::move(blocks));
}

AlgebraElement operator*(const Scalar& s, AlgebraElement a) {
  for (auto& m : a.blocks_) m = s * m;
  return a;
}

Vec AlgebraElement::vectorize() const {
  Vec v;
  v.reserve(algebra_.dim());
  for (const Mat& m : blocks_)
    for (const Scalar& s : m.data()) v.push_back(s);
  return v;
}

AlgebraElement AlgebraElement::from_vector(const MultiMatrixAlgebra& a, const Vec& v) {
  if (int(v.size()) != a.dim()) throw InputError("from_vector size mismatch");
  AlgebraElement e = zero(a);
  std::size_t k = 0;
  for (int j = 0; j < a.block_count(); ++j) {
    int n = a.block_dims()[j];
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) e.blocks_[j].at(r, c) = v[k++];
  }
  return e;
}

std::string AlgebraElement::str() const {
  std::ostringstream os;
  os << "[";
  for (int j = 0; j < algebra_.block_count(); ++j) {
    if (j) os << "; ";
    int n = algebra_.block_dims()[j];
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        if (r || c) os << ",";
        os << blocks_[j].at(r, c);
      }
  }
  os << "]";
  return os.str();
}

std::vector<AlgebraElement> matrix_unit_basis(const MultiMatrixAlgebra& a) {
  std::vector<AlgebraElement> out;
  out.reserve(a.dim());
  for (int j = 0; j < a.block_count(); ++j) {
    int n = a.block_dims()[j];
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) out.push_back(AlgebraElement::matrix_unit(a, j, r, c));
  }
  return out;
}

ProjectionElement::ProjectionElement(AlgebraElement e) : e_(std::move(e)) {
  if (e_ != e_.star() || e_ != e_ * e_) throw InputError("not a projection: e != e* or e != e^2");
}

int ProjectionElement::block_rank(int j) const { return rank(e_.block(j)); }

bool ProjectionElement::is_central() const {
  for (const AlgebraElement& b : matrix_unit_basis(e_.algebra()))
    if (e_ * b != b * e_) return false;
  return true;
}

Ideal::Ideal(MultiMatrixAlgebra algebra, std::set<int> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  for (int j : blocks_)
    if (j < 0 || j >= algebra_.block_count()) throw InputError("ideal block index out of range");
}

int Ideal::dim() const {
  int d = 0;
  for (int j : blocks_) d += algebra_.block_dims()[j] * algebra_.block_dims()[j];
  return d;
}

bool Ideal::contains(const AlgebraElement& a) const {
  for (int j = 0; j < algebra_.block_count(); ++j)
    if (!blocks_.count(j) && !a.block(j).is_zero()) return false;
  return true;
}

ProjectionElement Ideal::unit() const {
  AlgebraElement u = AlgebraElement::zero(algebra_);
  for (int j : blocks_) u.block(j) = Mat::identity(algebra_.block_dims()[j]);
  return ProjectionElement(u);
}

StarEndomorphism::StarEndomorphism(MultiMatrixAlgebra source, MultiMatrixAlgebra target,
                                   std::vector<EndoTargetBlock> targets)
    : source_(std::move(source)), target_(std::move(target)), targets_(std::move(targets)) {
  if (int(targets_.size()) != target_.block_count())
    throw InputError("endomorphism target block count mismatch");
  for (int j = 0; j < target_.block_count(); ++j) {
    const EndoTargetBlock& t = targets_[j];
    int n = target_.block_dims()[j];
    int used = t.padding;
    if (t.padding < 0) throw InputError("negative padding");
    for (int i : t.sources) {
      if (i < 0 || i >= source_.block_count()) throw InputError("source block out of range");
      used += source_.block_dims()[i];
    }
    if (used != n) throw InputError("multiplicities + padding do not fill the target block");
    if (t.unitary.rows() != n || t.unitary.cols() != n)
      throw InputError("conjugator shape mismatch");
    if (t.unitary.adjoint() * t.unitary != Mat::identity(n))
      throw InputError("conjugator is not unitary");
  }
}

StarEndomorphism StarEndomorphism::identity(const MultiMatrixAlgebra& a) {
  std::vector<EndoTargetBlock> targets;
  for (int j = 0; j < a.block_count(); ++j)
    targets.push_back({{j}, 0, Mat::identity(a.block_dims()[j])});
  return StarEndomorphism(a, a, std::move(targets));
}

AlgebraElement StarEndomorphism::apply(const AlgebraElement& a) const {
  if (a.algebra() != source_) throw InputError("apply: element not in the source algebra");
  std::vector<Mat> blocks;
  blocks.reserve(targets_.size());
  for (int j = 0; j < target_.block_count(); ++j) {
    const EndoTargetBlock& t = targets_[j];
    std::vector<Mat> parts;
    parts.reserve(t.sources.size());
    for (int i : t.sources) parts.push_back(a.block(i));
    Mat inner = block_diag(parts, t.padding);
    blocks.push_back(t.unitary * inner * t.unitary.adjoint());
  }
  return AlgebraElement(target_, std::move(blocks));
}

AlgebraElement apply_endo(const StarEndomorphism& phi, const AlgebraElement& a) {
  return phi.apply(a);
}

StarEndomorphism compose_endo(const StarEndomorphism& phi, const StarEndomorphism& psi) {
  if (psi.target() != phi.source()) throw InputError("compose: shapes not composable");
  const MultiMatrixAlgebra& a = psi.source();
  std::vector<EndoTargetBlock> targets;
  for (int k = 0; k < phi.target().block_count(); ++k) {
    const EndoTargetBlock& outer = phi.targets()[k];
    EndoTargetBlock combined;
    combined.padding = outer.padding;
    std::vector<Mat> inner_conjugators;
    // Interleaved layout: per middle block its source copies then its padding;
    // canonical layout: all source copies first, all padding last.
    std::vector<int> perm;
    int canon_sources = 0;
    for (int m : outer.sources)
      for (int i : psi.targets()[m].sources) canon_sources += a.block_dims()[i];
    int canon_pos = 0, canon_zero_pos = canon_sources;
    for (int m : outer.sources) {
      const EndoTargetBlock& mid = psi.targets()[m];
      combined.padding += mid.padding;
      inner_conjugators.push_back(mid.unitary);
      for (int i : mid.sources) {
        combined.sources.push_back(i);
        for (int d = 0; d < a.block_dims()[i]; ++d) perm.push_back(canon_pos++);
      }
      for (int d = 0; d < mid.padding; ++d) perm.push_back(canon_zero_pos++);
    }
    for (int d = 0; d < outer.padding; ++d) perm.push_back(canon_zero_pos++);
    if (outer.padding > 0) inner_conjugators.push_back(Mat::identity(outer.padding));
    Mat mid_diag = block_diag(inner_conjugators, 0);
    combined.unitary = outer.unitary * mid_diag * permutation_matrix(perm);
    targets.push_back(std::move(combined));
  }
  return StarEndomorphism(a, phi.target(), std::move(targets));
}

ProjectionElement power_of_unit(const StarEndomorphism& phi, int n) {
  if (!phi.is_endo()) throw InputError("power_of_unit needs an endomorphism");
  AlgebraElement e = AlgebraElement::one(phi.source());
  for (int k = 0; k < n; ++k) e = phi.apply(e);
  return ProjectionElement(e);
}

Ideal kernel_ideal(const StarEndomorphism& phi) {
  std::vector<int> used(phi.source().block_count(), 0);
  for (const EndoTargetBlock& t : phi.targets())
    for (int i : t.sources) ++used[i];
  std::set<int> blocks;
  for (int i = 0; i < phi.source().block_count(); ++i)
    if (used[i] == 0) blocks.insert(i);
  return Ideal(phi.source(), std::move(blocks));
}

ProjectionElement kernel_unit(const StarEndomorphism& phi) { return kernel_ideal(phi).unit(); }

AlgebraElement CornerAlgebra::compress(const AlgebraElement& a) const {
  return e.element() * a * e.element();
}

const AlgebraElement& CornerAlgebra::embed(const AlgebraElement& a) const { return a; }

CornerAlgebra corner_algebra(const MultiMatrixAlgebra& a, const ProjectionElement& e) {
  if (e.element().algebra() != a) throw InputError("corner: projection not in the algebra");
  CornerAlgebra out;
  out.e = e;
  std::vector<int> dims;
  for (int j = 0; j < a.block_count(); ++j) {
    int r = e.block_rank(j);
    out.block_ranks.push_back(r);
    if (r > 0) dims.push_back(r);
  }
  out.corner = MultiMatrixAlgebra(dims);
  return out;
}

int image_dim(const StarEndomorphism& phi) {
  return phi.source().dim() - kernel_ideal(phi).dim();
}

bool is_hereditary_range(const StarEndomorphism& phi) {
  if (!phi.is_endo()) throw InputError("is_hereditary_range needs an endomorphism");
  ProjectionElement c = power_of_unit(phi, 1);
  int corner_dim = corner_algebra(phi.source(), c).corner.dim();
  return image_dim(phi) == corner_dim;
}

EndoClassification classify(const StarEndomorphism& phi) {
  if (!phi.is_endo()) throw InputError("classify needs an endomorphism");
  EndoClassification c;
  c.mono = kernel_ideal(phi).blocks().empty();
  c.epi = image_dim(phi) == phi.target().dim();
  c.aut = c.mono && c.epi;
  c.unital = phi.apply(AlgebraElement::one(phi.source())) == AlgebraElement::one(phi.source());
  // Every ideal of a multi-matrix algebra is a sum of blocks and carries a unit.
  c.unital_kernel = true;
  c.hereditary_range = is_hereditary_range(phi);
  c.complete = c.unital_kernel && c.hereditary_range;
  return c;
}

std::vector<ProjectionElement> central_projections(const MultiMatrixAlgebra& a, int max_blocks) {
  int b = a.block_count();
  if (b > max_blocks)
    throw InputError("central_projections: block count exceeds the exhaustive-search guard");
  std::vector<ProjectionElement> out;
  for (unsigned mask = 0; mask < (1u << b); ++mask) {
    AlgebraElement e = AlgebraElement::zero(a);
    for (int j = 0; j < b; ++j)
      if (mask & (1u << j)) e.block(j) = Mat::identity(a.block_dims()[j]);
    out.push_back(ProjectionElement(std::move(e)));
  }
  return out;
}

}  // namespace stardyn
