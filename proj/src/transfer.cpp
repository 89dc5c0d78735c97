#include "stardyn/transfer.hpp"

#include <random>

namespace stardyn {

LinearMap::LinearMap(MultiMatrixAlgebra algebra, Mat matrix)
    : algebra_(std::move(algebra)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != algebra_.dim() || matrix_.cols() != algebra_.dim())
    throw InputError("linear map matrix must be dim x dim");
}

LinearMap LinearMap::identity_map(const MultiMatrixAlgebra& a) {
  return LinearMap(a, Mat::identity(a.dim()));
}

LinearMap LinearMap::zero_map(const MultiMatrixAlgebra& a) {
  return LinearMap(a, Mat::zero(a.dim(), a.dim()));
}

LinearMap LinearMap::from_images(const MultiMatrixAlgebra& a,
                                 const std::vector<AlgebraElement>& images) {
  if (int(images.size()) != a.dim()) throw InputError("from_images: need one image per basis element");
  Mat m(a.dim(), a.dim());
  for (int col = 0; col < a.dim(); ++col) {
    Vec v = images[col].vectorize();
    for (int row = 0; row < a.dim(); ++row) m.at(row, col) = v[row];
  }
  return LinearMap(a, std::move(m));
}

LinearMap LinearMap::from_endo(const StarEndomorphism& phi) {
  if (!phi.is_endo()) throw InputError("from_endo: need an endomorphism");
  std::vector<AlgebraElement> images;
  for (const AlgebraElement& b : matrix_unit_basis(phi.source())) images.push_back(phi.apply(b));
  return from_images(phi.source(), images);
}

AlgebraElement LinearMap::apply(const AlgebraElement& a) const {
  if (a.algebra() != algebra_) throw InputError("linear map applied outside its algebra");
  Vec v = a.vectorize();
  Vec out(algebra_.dim());
  for (int row = 0; row < algebra_.dim(); ++row)
    for (int col = 0; col < algebra_.dim(); ++col) {
      const Scalar& m = matrix_.at(row, col);
      if (!m.is_zero() && !v[col].is_zero()) out[row] += m * v[col];
    }
  return AlgebraElement::from_vector(algebra_, out);
}

LinearMap compose(const LinearMap& f, const LinearMap& g) {
  if (f.algebra() != g.algebra()) throw InputError("compose: algebra mismatch");
  return LinearMap(f.algebra(), f.matrix() * g.matrix());
}

Scalar trace_inner(const AlgebraElement& x, const AlgebraElement& y) {
  return (x.star() * y).trace();
}

bool is_star_preserving(const LinearMap& tau) {
  const MultiMatrixAlgebra& a = tau.algebra();
  for (int j = 0; j < a.block_count(); ++j) {
    int n = a.block_dims()[j];
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) {
        AlgebraElement e = AlgebraElement::matrix_unit(a, j, r, s);
        if (tau.apply(e.star()) != tau.apply(e).star()) return false;
      }
  }
  return true;
}

namespace {

bool blocks_psd(const AlgebraElement& x) {
  for (int j = 0; j < x.algebra().block_count(); ++j)
    if (!is_psd(x.block(j))) return false;
  return true;
}

AlgebraElement seeded_element(const MultiMatrixAlgebra& a, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 2);
  AlgebraElement e = AlgebraElement::zero(a);
  for (int j = 0; j < a.block_count(); ++j)
    for (int r = 0; r < a.block_dims()[j]; ++r)
      for (int c = 0; c < a.block_dims()[j]; ++c)
        e.block(j).at(r, c) = Scalar(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
  return e;
}

}  // namespace

bool is_positive_map(const LinearMap& tau) {
  const MultiMatrixAlgebra& a = tau.algebra();
  if (a.commutative()) {
    // Positive elements are the entrywise-nonnegative ones, so positivity is
    // equivalent to every basis image being entrywise nonnegative and real.
    for (int v = 0; v < a.block_count(); ++v) {
      AlgebraElement img = tau.apply(AlgebraElement::matrix_unit(a, v, 0, 0));
      for (int x = 0; x < a.block_count(); ++x) {
        const Scalar& s = img.coord(x);
        if (!s.is_real() || s.re() < 0) return false;
      }
    }
    return true;
  }
  for (const AlgebraElement& b : matrix_unit_basis(a)) {
    if (!blocks_psd(tau.apply(b.star() * b))) return false;
  }
  std::mt19937_64 rng(0x5eed);
  for (int t = 0; t < 24; ++t) {
    AlgebraElement x = seeded_element(a, rng);
    if (!blocks_psd(tau.apply(x.star() * x))) return false;
  }
  return true;
}

bool is_transfer(const StarEndomorphism& phi, const LinearMap& tau) {
  if (!phi.is_endo() || tau.algebra() != phi.source())
    throw InputError("is_transfer: map must act on the system's algebra");
  if (!is_star_preserving(tau)) return false;
  if (!is_positive_map(tau)) return false;
  std::vector<AlgebraElement> basis = matrix_unit_basis(phi.source());
  for (const AlgebraElement& a : basis) {
    AlgebraElement da = phi.apply(a);
    for (const AlgebraElement& b : basis)
      if (tau.apply(da * b) != a * tau.apply(b)) return false;
  }
  return true;
}

bool is_nondegenerate(const StarEndomorphism& phi, const LinearMap& tau) {
  if (!is_transfer(phi, tau)) throw InputError("is_nondegenerate: tau is not a transfer operator");
  bool item_ii = true;
  for (const AlgebraElement& b : matrix_unit_basis(phi.source())) {
    AlgebraElement db = phi.apply(b);
    if (phi.apply(tau.apply(db)) != db) {
      item_ii = false;
      break;
    }
  }
  AlgebraElement one = AlgebraElement::one(phi.source());
  bool item_iii = phi.apply(tau.apply(one)) == phi.apply(one);
  if (item_ii != item_iii)
    throw ContractViolation("non-degeneracy conditions (ii) and (iii) disagree");
  return item_ii;
}

namespace {

std::vector<AlgebraElement> complement_block_units(const StarEndomorphism& phi) {
  const MultiMatrixAlgebra& a = phi.source();
  const std::set<int> ker = kernel_ideal(phi).blocks();
  std::vector<AlgebraElement> out;
  for (int j = 0; j < a.block_count(); ++j) {
    if (ker.count(j)) continue;
    int n = a.block_dims()[j];
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) out.push_back(AlgebraElement::matrix_unit(a, j, r, s));
  }
  return out;
}

}  // namespace

LinearMap canonical_nondegenerate_transfer(const StarEndomorphism& phi) {
  if (!phi.is_endo()) throw InputError("transfer construction needs an endomorphism");
  const MultiMatrixAlgebra& a = phi.source();
  std::vector<AlgebraElement> pbasis = complement_block_units(phi);
  std::vector<AlgebraElement> dbasis;  // images span delta(A), independent since delta|pA is 1-1
  for (const AlgebraElement& b : pbasis) dbasis.push_back(phi.apply(b));

  // Gram matrix of the image basis under the trace inner product.
  int k = int(dbasis.size());
  std::vector<Vec> gram_cols(k, Vec(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gram_cols[j][i] = trace_inner(dbasis[i], dbasis[j]);
  LinearSolver gram(gram_cols);

  AlgebraElement c = power_of_unit(phi, 1).element();
  std::vector<AlgebraElement> images;
  for (const AlgebraElement& b : matrix_unit_basis(a)) {
    AlgebraElement cbc = c * b * c;
    Vec rhs(k);
    for (int i = 0; i < k; ++i) rhs[i] = trace_inner(dbasis[i], cbc);
    auto coeff = gram.solve(rhs);
    if (!coeff)
      throw ContractViolation("Gram system unsolvable while projecting onto delta(A)");
    AlgebraElement img = AlgebraElement::zero(a);
    for (int i = 0; i < k; ++i)
      if (!(*coeff)[i].is_zero()) img += (*coeff)[i] * pbasis[i];
    images.push_back(std::move(img));
  }
  return LinearMap::from_images(a, images);
}

LinearMap complete_transfer(const StarEndomorphism& phi) {
  EndoClassification cls = classify(phi);
  if (!cls.unital_kernel)
    throw NotCompleteError(NotCompleteError::Reason::kernel_not_unital,
                           "system not complete: kernel has no unit");
  if (!cls.hereditary_range)
    throw NotCompleteError(NotCompleteError::Reason::range_not_hereditary,
                           "system not complete: range is not hereditary");
  const MultiMatrixAlgebra& a = phi.source();
  std::vector<AlgebraElement> pbasis = complement_block_units(phi);
  std::vector<Vec> cols;
  for (const AlgebraElement& b : pbasis) cols.push_back(phi.apply(b).vectorize());
  LinearSolver inv(cols, std::size_t(a.dim()));
  AlgebraElement c = power_of_unit(phi, 1).element();
  std::vector<AlgebraElement> images;
  for (const AlgebraElement& b : matrix_unit_basis(a)) {
    auto x = inv.solve((c * b * c).vectorize());
    if (!x)
      throw ContractViolation("corner element escapes delta(A) in a complete system");
    AlgebraElement img = AlgebraElement::zero(a);
    for (std::size_t i = 0; i < pbasis.size(); ++i)
      if (!(*x)[i].is_zero()) img += (*x)[i] * pbasis[i];
    images.push_back(std::move(img));
  }
  return LinearMap::from_images(a, images);
}

CompletenessReport completeness_report(const StarEndomorphism& phi) {
  if (!phi.is_endo()) throw InputError("completeness_report needs an endomorphism");
  const MultiMatrixAlgebra& a = phi.source();
  CompletenessReport rep;
  rep.q = kernel_unit(phi);

  EndoClassification cls = classify(phi);
  rep.item_i = cls.unital_kernel && cls.hereditary_range;

  AlgebraElement c = power_of_unit(phi, 1).element();
  std::vector<AlgebraElement> basis = matrix_unit_basis(a);
  auto satisfies_b3 = [&](const LinearMap& tau) {
    for (const AlgebraElement& b : basis)
      if (phi.apply(tau.apply(b)) != c * b * c) return false;
    return true;
  };

  LinearMap canonical = canonical_nondegenerate_transfer(phi);
  std::vector<LinearMap> candidates{canonical};
  if (cls.hereditary_range) candidates.push_back(complete_transfer(phi));
  rep.item_ii = false;
  for (const LinearMap& tau : candidates)
    if (is_transfer(phi, tau) && satisfies_b3(tau)) {
      rep.item_ii = true;
      rep.transfer = tau;
      break;
    }

  rep.item_iii = is_nondegenerate(phi, canonical) && is_hereditary_range(phi);

  int d_image = image_dim(phi);
  int d_corner = corner_algebra(a, power_of_unit(phi, 1)).corner.dim();
  rep.item_iv = false;
  for (const ProjectionElement& p : central_projections(a)) {
    // delta restricted to pA must be injective with image all of delta(A),
    // and delta(A) must fill the corner.
    std::vector<Vec> cols;
    int pa_dim = 0;
    for (int j = 0; j < a.block_count(); ++j) {
      if (p.element().block(j).is_zero()) continue;
      int n = a.block_dims()[j];
      pa_dim += n * n;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          cols.push_back(phi.apply(AlgebraElement::matrix_unit(a, j, r, s)).vectorize());
    }
    LinearSolver restricted(cols, std::size_t(a.dim()));
    bool injective = restricted.rank() == pa_dim;
    bool onto_image = restricted.rank() == d_image;
    bool corner_full = d_image == d_corner;
    if (injective && onto_image && corner_full) {
      rep.item_iv = true;
      rep.witness_p = p;
      break;
    }
  }

  if (rep.item_i != rep.item_ii || rep.item_i != rep.item_iii || rep.item_i != rep.item_iv)
    throw ContractViolation("completeness criteria i-iv disagree");
  rep.complete = rep.item_i;

  if (rep.complete) {
    LinearMap full = complete_transfer(phi);
    if (full != canonical)
      throw ContractViolation("canonical and complete transfer operators differ");
    AlgebraElement tau1 = full.apply(AlgebraElement::one(a));
    AlgebraElement expect_p = AlgebraElement::one(a) - rep.q.element();
    if (tau1 != expect_p || !rep.witness_p || rep.witness_p->element() != expect_p)
      throw ContractViolation("witness identity p = tau(1) = 1 - q fails");
    rep.transfer = full;
  }
  return rep;
}

LinearMap conditional_expectation(const StarEndomorphism& phi, const LinearMap& tau) {
  if (!is_nondegenerate(phi, tau))
    throw InputError("conditional_expectation needs a non-degenerate transfer");
  const MultiMatrixAlgebra& a = phi.source();
  LinearMap e = compose(LinearMap::from_endo(phi), tau);

  std::vector<AlgebraElement> basis = matrix_unit_basis(a);
  SpanBuilder image_span(a.dim());
  std::vector<AlgebraElement> image_basis;
  for (const AlgebraElement& b : basis) {
    AlgebraElement db = phi.apply(b);
    if (image_span.add(db.vectorize())) image_basis.push_back(db);
  }
  for (const AlgebraElement& b : basis) {
    AlgebraElement eb = e.apply(b);
    if (e.apply(eb) != eb) throw ContractViolation("E is not idempotent");
    if (!image_span.contains(eb.vectorize()))
      throw ContractViolation("E does not map into delta(A)");
  }
  for (const AlgebraElement& x : image_basis)
    if (e.apply(x) != x) throw ContractViolation("E does not fix delta(A)");
  if (!is_positive_map(e)) throw ContractViolation("E is not positive");
  for (const AlgebraElement& x : image_basis)
    for (const AlgebraElement& y : image_basis)
      for (const AlgebraElement& b : basis)
        if (e.apply(x * b * y) != x * e.apply(b) * y)
          throw ContractViolation("E fails the bimodule property over delta(A)");
  return e;
}

}  // namespace stardyn
