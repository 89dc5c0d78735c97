#include "stardyn/covrep.hpp"

#include <algorithm>
#include <functional>

#include "stardyn/unitize.hpp"

namespace stardyn {

SparseVector SparseVector::unit(BasisId b) {
  SparseVector v;
  v.entries_.emplace(std::move(b), Scalar(1));
  return v;
}

void SparseVector::set(const BasisId& b, const Scalar& s) {
  if (s.is_zero())
    entries_.erase(b);
  else
    entries_[b] = s;
}

Scalar SparseVector::at(const BasisId& b) const {
  auto it = entries_.find(b);
  return it == entries_.end() ? Scalar(0) : it->second;
}

SparseVector& SparseVector::operator+=(const SparseVector& o) {
  for (const auto& [b, s] : o.entries_) {
    auto it = entries_.find(b);
    if (it == entries_.end()) {
      entries_.emplace(b, s);
    } else {
      it->second += s;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }
  return *this;
}

SparseVector SparseVector::scaled(const Scalar& s) const {
  SparseVector out;
  if (s.is_zero()) return out;
  for (const auto& [b, c] : entries_) out.entries_.emplace(b, s * c);
  return out;
}

std::shared_ptr<RepContext> RepContext::strict(PartialMap m, int depth, long point_limit) {
  auto ctx = std::shared_ptr<RepContext>(new RepContext());
  ctx->kind_ = Kind::strict;
  ctx->map_ = m;
  ctx->delta_ = induced_endomorphism(m);
  ctx->depth_ = depth;
  ctx->ext_ = std::make_shared<ExtendedSystem>(std::move(m));
  ctx->ext_->set_point_limit(point_limit);
  for (ExtPoint& p : ctx->ext_->enumerate_points(depth)) {
    ctx->basis_set_.insert(p);
    ctx->basis_.push_back(std::move(p));
  }
  ctx->saturated_ = true;
  for (const BasisId& b : ctx->basis_) {
    const ExtPoint& p = std::get<ExtPoint>(b);
    if (ctx->ext_->in_domain_tilde(p) && !ctx->basis_set_.count(ctx->ext_->alpha_tilde(p)))
      ctx->saturated_ = false;
  }
  return ctx;
}

std::shared_ptr<RepContext> RepContext::tower_of_copies(PartialMap m, int depth) {
  if (!m.injective())
    throw InputError("the direct-sum representation needs an injective map");
  auto ctx = std::shared_ptr<RepContext>(new RepContext());
  ctx->kind_ = Kind::tower_of_copies;
  ctx->delta_ = induced_endomorphism(m);
  ctx->alpha_inverse_.assign(m.size(), -1);
  for (int x = 0; x < m.size(); ++x)
    if (m.in_domain(x)) ctx->alpha_inverse_[m.image(x)] = x;
  ctx->depth_ = depth;
  for (int n = 0; n <= depth; ++n)
    for (int x = 0; x < m.size(); ++x) {
      BasisId b = PairBasis{x, n};
      ctx->basis_set_.insert(b);
      ctx->basis_.push_back(b);
    }
  ctx->saturated_ = m.domain().empty();
  ctx->map_ = std::move(m);
  return ctx;
}

const ExtendedSystem& RepContext::system() const {
  if (!ext_) throw InputError("this representation has no extended-space structure");
  return *ext_;
}

bool RepContext::enumerated(const BasisId& b) const { return basis_set_.count(b) > 0; }

bool RepContext::inside(const SparseVector& v) const {
  for (const auto& [b, s] : v.entries())
    if (!basis_set_.count(b)) return false;
  return true;
}

SparseVector RepContext::u_on_basis(const BasisId& b) const {
  if (kind_ == Kind::strict) {
    const ExtPoint& p = std::get<ExtPoint>(b);
    if (!ext_->in_range_tilde(p)) return {};
    return SparseVector::unit(ext_->alpha_tilde_inv(p));
  }
  const PairBasis& pb = std::get<PairBasis>(b);
  if (pb.copy < 1 || alpha_inverse_[pb.point] < 0) return {};
  return SparseVector::unit(PairBasis{alpha_inverse_[pb.point], pb.copy - 1});
}

SparseVector RepContext::u_star_on_basis(const BasisId& b) const {
  if (kind_ == Kind::strict) {
    const ExtPoint& p = std::get<ExtPoint>(b);
    if (!ext_->in_domain_tilde(p)) return {};
    return SparseVector::unit(ext_->alpha_tilde(p));
  }
  const PairBasis& pb = std::get<PairBasis>(b);
  if (!map_.in_domain(pb.point)) return {};
  return SparseVector::unit(PairBasis{map_.image(pb.point), pb.copy + 1});
}

SparseVector RepContext::apply_u(const SparseVector& v) const {
  SparseVector out;
  for (const auto& [b, s] : v.entries()) out += u_on_basis(b).scaled(s);
  return out;
}

SparseVector RepContext::apply_u_star(const SparseVector& v) const {
  SparseVector out;
  for (const auto& [b, s] : v.entries()) out += u_star_on_basis(b).scaled(s);
  return out;
}

SparseVector RepContext::apply_mult(const AlgebraElement& a, const SparseVector& v) const {
  SparseVector out;
  for (const auto& [b, s] : v.entries()) {
    int x = kind_ == Kind::strict ? ext_->coordinate(std::get<ExtPoint>(b), 0)
                                  : std::get<PairBasis>(b).point;
    Scalar c = a.coord(x) * s;
    if (!c.is_zero()) out.set(b, c);
  }
  return out;
}

SparseVector RepContext::apply_mult_tower(const TowerElement& x, const SparseVector& v) const {
  if (kind_ != Kind::strict)
    throw InputError("tower multiplication lives on the extended-space representation");
  SparseVector out;
  for (const auto& [b, s] : v.entries()) {
    Scalar c = ext_->evaluate(x, std::get<ExtPoint>(b)) * s;
    if (!c.is_zero()) out.set(b, c);
  }
  return out;
}

std::string RepContext::basis_label(const BasisId& b) const {
  if (kind_ == Kind::strict) return ext_->point_label(std::get<ExtPoint>(b));
  const PairBasis& pb = std::get<PairBasis>(b);
  return map_.name(pb.point) + ":" + std::to_string(pb.copy);
}

namespace {

// 0 = U, 1 = U*; applied in order to a basis vector, true when every
// intermediate stays enumerated.
bool certify_moves(const RepContext& ctx, const std::vector<int>& moves, const BasisId& b) {
  SparseVector v = SparseVector::unit(b);
  for (int m : moves) {
    v = m == 0 ? ctx.apply_u(v) : ctx.apply_u_star(v);
    if (!ctx.inside(v)) return false;
  }
  return true;
}

const char* relation_name(CRFlag f) {
  switch (f) {
    case CRFlag::cr1: return "CR1";
    case CRFlag::cr1_prime: return "CR1'";
    case CRFlag::cr1_doubleprime: return "CR1''";
    case CRFlag::cr2: return "CR2";
    case CRFlag::cr3: return "CR3";
  }
  return "?";
}

}  // namespace

long CRReport::certified_checks() const {
  long n = 0;
  for (const auto& r : relations) n += r.checks;
  return n;
}

const RelationReport& CRReport::relation(CRFlag f) const {
  for (const auto& r : relations)
    if (r.flag == f) return r;
  throw InputError("relation not part of this report");
}

bool CRReport::all_pass() const {
  return std::all_of(relations.begin(), relations.end(),
                     [](const RelationReport& r) { return r.pass(); });
}

CRReport verify_cr(const RepContext& ctx, const std::set<CRFlag>& flags) {
  CRReport report;
  report.saturated = ctx.saturated();
  const std::vector<AlgebraElement> abasis = matrix_unit_basis(ctx.endo().source());
  const AlgebraElement pa =
      AlgebraElement::one(ctx.endo().source()) - kernel_unit(ctx.endo()).element();

  // Transfer data for CR3.
  std::vector<TowerElement> transfer_tower;
  std::vector<AlgebraElement> transfer_flat;
  if (flags.count(CRFlag::cr3)) {
    if (ctx.kind() == RepContext::Kind::strict) {
      const NaturalExtension& next = ctx.system().extension();
      for (const AlgebraElement& a : abasis)
        transfer_tower.push_back(next.ext_transfer(next.inject(a)));
    } else {
      LinearMap tau = complete_transfer(ctx.endo());
      for (const AlgebraElement& a : abasis) transfer_flat.push_back(tau.apply(a));
    }
  }

  for (CRFlag f : flags) {
    RelationReport rel;
    rel.flag = f;
    rel.name = relation_name(f);
    std::vector<int> moves;
    switch (f) {
      case CRFlag::cr1: moves = {0}; break;
      case CRFlag::cr1_prime: moves = {0, 1}; break;
      case CRFlag::cr1_doubleprime: moves = {0, 1}; break;
      case CRFlag::cr2: moves = {1, 0}; break;
      case CRFlag::cr3: moves = {0, 1}; break;
    }
    for (const BasisId& b : ctx.basis()) {
      if (!certify_moves(ctx, moves, b)) {
        ++rel.excluded;
        continue;
      }
      SparseVector e = SparseVector::unit(b);
      if (f == CRFlag::cr1_doubleprime) {
        SparseVector lhs = ctx.apply_u_star(ctx.apply_u(e));
        SparseVector rhs = ctx.apply_mult(pa, e);
        ++rel.checks;
        if (lhs != rhs) ++rel.failures;
        continue;
      }
      for (std::size_t i = 0; i < abasis.size(); ++i) {
        const AlgebraElement& a = abasis[i];
        SparseVector lhs, rhs;
        switch (f) {
          case CRFlag::cr1:
            lhs = ctx.apply_u(ctx.apply_mult(a, e));
            rhs = ctx.apply_mult(ctx.endo().apply(a), ctx.apply_u(e));
            break;
          case CRFlag::cr1_prime:
            lhs = ctx.apply_u_star(ctx.apply_u(ctx.apply_mult(a, e)));
            rhs = ctx.apply_mult(a, ctx.apply_u_star(ctx.apply_u(e)));
            break;
          case CRFlag::cr2:
            lhs = ctx.apply_mult(ctx.endo().apply(a), e);
            rhs = ctx.apply_u(ctx.apply_mult(a, ctx.apply_u_star(e)));
            break;
          case CRFlag::cr3:
            lhs = ctx.kind() == RepContext::Kind::strict
                      ? ctx.apply_mult_tower(transfer_tower[i], e)
                      : ctx.apply_mult(transfer_flat[i], e);
            rhs = ctx.apply_u_star(ctx.apply_mult(a, ctx.apply_u(e)));
            break;
          default: break;
        }
        ++rel.checks;
        if (lhs != rhs) ++rel.failures;
      }
    }
    report.relations.push_back(std::move(rel));
  }
  return report;
}

namespace {

// Diagonal coefficient of an operator at a basis vector; throws when the
// image is not a multiple of the same vector.
Scalar diagonal_coefficient(const SparseVector& image, const BasisId& b) {
  for (const auto& [key, s] : image.entries())
    if (!(key == b)) throw ContractViolation("operator expected to be diagonal is not");
  return image.at(b);
}

using DiagVec = std::vector<Scalar>;

// The diagonal function of a |-> op_factory(a) over the context basis.
std::vector<DiagVec> diagonal_family(
    const RepContext& ctx,
    const std::function<SparseVector(const AlgebraElement&, const SparseVector&)>& op,
    const std::vector<AlgebraElement>& abasis) {
  std::vector<DiagVec> out;
  for (const AlgebraElement& a : abasis) {
    DiagVec d;
    for (const BasisId& b : ctx.basis())
      d.push_back(diagonal_coefficient(op(a, SparseVector::unit(b)), b));
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Vec> kernel_of_family(const std::vector<DiagVec>& family) {
  std::vector<Vec> cols;
  for (const DiagVec& d : family) cols.push_back(d);
  LinearSolver ls(cols, family.empty() ? 0 : family[0].size());
  return ls.kernel_basis();
}

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t width) {
  SpanBuilder sa(width), sb(width);
  for (const Vec& v : a) sa.add(v);
  for (const Vec& v : b) sb.add(v);
  if (sa.dim() != sb.dim()) return false;
  for (const Vec& v : a)
    if (!sb.contains(v)) return false;
  return true;
}

}  // namespace

StructuralReport structural_checks(const RepContext& ctx) {
  StructuralReport rep;
  const MultiMatrixAlgebra& alg = ctx.endo().source();
  const std::vector<AlgebraElement> abasis = matrix_unit_basis(alg);
  const AlgebraElement q = kernel_unit(ctx.endo()).element();
  const AlgebraElement pa = AlgebraElement::one(alg) - q;

  // Diagonal data of U*U and P = pi(1 - q).
  DiagVec uu, pp;
  for (const BasisId& b : ctx.basis()) {
    uu.push_back(diagonal_coefficient(ctx.apply_u_star(ctx.apply_u(SparseVector::unit(b))), b));
    pp.push_back(diagonal_coefficient(ctx.apply_mult(pa, SparseVector::unit(b)), b));
  }
  rep.uu_below_p = true;
  rep.uu_equals_p = true;
  for (std::size_t i = 0; i < uu.size(); ++i) {
    Scalar gap = pp[i] - uu[i];
    if (!gap.is_real() || gap.re() < 0) rep.uu_below_p = false;
    if (!gap.is_zero()) rep.uu_equals_p = false;
  }

  // Commutation with pi(A): everything here is diagonal, but check honestly.
  rep.p_in_commutant = true;
  rep.uu_in_commutant = true;
  for (const AlgebraElement& a : abasis)
    for (const BasisId& b : ctx.basis()) {
      SparseVector e = SparseVector::unit(b);
      if (ctx.apply_mult(pa, ctx.apply_mult(a, e)) != ctx.apply_mult(a, ctx.apply_mult(pa, e)))
        rep.p_in_commutant = false;
      SparseVector uue = ctx.apply_u_star(ctx.apply_u(e));
      SparseVector aue = ctx.apply_u_star(ctx.apply_u(ctx.apply_mult(a, e)));
      if (aue != ctx.apply_mult(a, uue)) rep.uu_in_commutant = false;
    }

  // Kernels of a -> U*U pi(a), a -> P pi(a), a -> (1-U*U) pi(a), a -> (1-P) pi(a).
  auto uu_op = [&](const AlgebraElement& a, const SparseVector& v) {
    return ctx.apply_u_star(ctx.apply_u(ctx.apply_mult(a, v)));
  };
  auto p_op = [&](const AlgebraElement& a, const SparseVector& v) {
    return ctx.apply_mult(pa * a, v);
  };
  auto cuu_op = [&](const AlgebraElement& a, const SparseVector& v) {
    SparseVector full = ctx.apply_mult(a, v);
    return full + uu_op(a, v).scaled(Scalar(-1));
  };
  auto cp_op = [&](const AlgebraElement& a, const SparseVector& v) {
    return ctx.apply_mult((AlgebraElement::one(alg) - pa) * a, v);
  };
  auto fam_uu = diagonal_family(ctx, uu_op, abasis);
  auto fam_p = diagonal_family(ctx, p_op, abasis);
  auto fam_cuu = diagonal_family(ctx, cuu_op, abasis);
  auto fam_cp = diagonal_family(ctx, cp_op, abasis);

  std::vector<Vec> delta_kernel;
  {
    std::vector<Vec> cols;
    for (const AlgebraElement& a : abasis) cols.push_back(ctx.endo().apply(a).vectorize());
    LinearSolver ls(cols, std::size_t(alg.dim()));
    delta_kernel = ls.kernel_basis();
  }

  rep.kernel_match = same_span(kernel_of_family(fam_uu), delta_kernel, abasis.size());
  rep.t1_iso = same_span(kernel_of_family(fam_uu), kernel_of_family(fam_p), abasis.size());
  {
    // T2 well-defined: ker((1-U*U) pi) contained in ker((1-P) pi).
    auto k2 = kernel_of_family(fam_cp);
    SpanBuilder target(abasis.size());
    for (const Vec& v : k2) target.add(v);
    rep.t2_epi = true;
    for (const Vec& v : kernel_of_family(fam_cuu))
      if (!target.contains(v)) rep.t2_epi = false;
  }
  {
    // Remark on ideals: {a : P pi(a) = 0} is ker delta; {a : (1-P) pi(a) = 0}
    // is the largest ideal intersecting it trivially.
    Ideal ker = kernel_ideal(ctx.endo());
    Ideal perp = ideal_complement(alg, ker);
    std::vector<Vec> ker_span, perp_span;
    for (std::size_t i = 0; i < abasis.size(); ++i) {
      Vec e(abasis.size());
      e[i] = Scalar(1);
      if (ker.contains(abasis[i])) ker_span.push_back(e);
      if (perp.contains(abasis[i])) perp_span.push_back(Vec(e));
    }
    rep.ideal_match = same_span(kernel_of_family(fam_p), ker_span, abasis.size()) &&
                      same_span(kernel_of_family(fam_cp), perp_span, abasis.size());
  }

  // The compression/expansion pair between U*U pi(A) and pi(delta(A)).
  rep.iso_pair = true;
  for (const AlgebraElement& a : abasis)
    for (const BasisId& b : ctx.basis()) {
      SparseVector e = SparseVector::unit(b);
      if (certify_moves(ctx, {1, 0, 1, 0}, b)) {
        SparseVector lhs = ctx.apply_u(uu_op(a, ctx.apply_u_star(e)));
        SparseVector rhs = ctx.apply_mult(ctx.endo().apply(a), e);
        if (lhs != rhs) rep.iso_pair = false;
      }
      if (certify_moves(ctx, {0, 1}, b)) {
        SparseVector lhs = ctx.apply_u_star(ctx.apply_mult(ctx.endo().apply(a), ctx.apply_u(e)));
        SparseVector rhs = uu_op(a, e);
        if (lhs != rhs) rep.iso_pair = false;
      }
    }

  if (ctx.kind() == RepContext::Kind::strict) {
    // The kernel-unitized system represents through
    // pi+((a+I) (+) (b+I_perp)) = U*U pi(a) + (1-U*U) pi(b).
    UnitizedSystem u = unitize_kernel(ctx.endo());
    rep.unitized_rep_ok = true;
    const std::vector<AlgebraElement> plus_basis = matrix_unit_basis(u.aplus);
    // well defined: representatives inside I or I_perp act trivially
    for (const AlgebraElement& a : abasis) {
      if (u.i.contains(a)) {
        for (const BasisId& b : ctx.basis())
          if (!uu_op(a, SparseVector::unit(b)).is_zero()) rep.unitized_rep_ok = false;
      }
      if (u.i_perp.contains(a)) {
        for (const BasisId& b : ctx.basis())
          if (!cuu_op(a, SparseVector::unit(b)).is_zero()) rep.unitized_rep_ok = false;
      }
    }
    // pi+ restricted to the embedded copy of A agrees with pi
    for (const AlgebraElement& a : abasis)
      for (const BasisId& b : ctx.basis()) {
        SparseVector e = SparseVector::unit(b);
        SparseVector lhs = uu_op(a * pa, e) + cuu_op(a * q, e);
        if (lhs != ctx.apply_mult(a, e)) rep.unitized_rep_ok = false;
      }
    // pi+ is multiplicative and faithful on A+, and (pi+, U) is covariant
    // with respect to the extended endomorphism.
    std::vector<DiagVec> plus_diag;
    for (const AlgebraElement& xp : plus_basis) {
      AlgebraElement back = u.embed_inverse(xp);
      DiagVec d;
      for (const BasisId& b : ctx.basis()) {
        SparseVector e = SparseVector::unit(b);
        AlgebraElement a_rep = back * pa;
        AlgebraElement b_rep = back * q;
        SparseVector img = uu_op(a_rep, e) + cuu_op(b_rep, e);
        d.push_back(diagonal_coefficient(img, b));
      }
      plus_diag.push_back(std::move(d));
    }
    std::vector<Vec> cols;
    for (const DiagVec& d : plus_diag) cols.push_back(d);
    LinearSolver ls(cols, ctx.basis().size());
    if (ls.rank() != u.aplus.dim()) rep.unitized_rep_ok = false;
    for (std::size_t i = 0; i < plus_basis.size(); ++i)
      for (std::size_t j = 0; j < plus_basis.size(); ++j) {
        AlgebraElement prod = plus_basis[i] * plus_basis[j];
        for (std::size_t k = 0; k < ctx.basis().size(); ++k) {
          Scalar expect = plus_diag[i][k] * plus_diag[j][k];
          AlgebraElement back = u.embed_inverse(prod);
          SparseVector e = SparseVector::unit(ctx.basis()[k]);
          SparseVector img = uu_op(back * pa, e) + cuu_op(back * q, e);
          if (diagonal_coefficient(img, ctx.basis()[k]) != expect) rep.unitized_rep_ok = false;
        }
      }
    // U*U = pi+(p_plus)
    for (std::size_t k = 0; k < ctx.basis().size(); ++k) {
      AlgebraElement back = u.embed_inverse(u.p_plus.element());
      SparseVector e = SparseVector::unit(ctx.basis()[k]);
      SparseVector img = uu_op(back * pa, e) + cuu_op(back * q, e);
      if (diagonal_coefficient(img, ctx.basis()[k]) != uu[k]) rep.unitized_rep_ok = false;
    }
  } else {
    // The gap P - U*U is exactly the copy-0 block over the range of alpha.
    rep.gap_on_copy0 = true;
    for (std::size_t i = 0; i < ctx.basis().size(); ++i) {
      const PairBasis& pb = std::get<PairBasis>(ctx.basis()[i]);
      Scalar gap = pp[i] - uu[i];
      bool expect = pb.copy == 0 && ctx.map().range().count(pb.point) > 0;
      if (gap != (expect ? Scalar(1) : Scalar(0))) rep.gap_on_copy0 = false;
    }
    rep.compressed_algebra_faithful = kernel_of_family(fam_cuu).empty();
  }
  return rep;
}

CorrespondenceReport correspondence_check(
    const RepContext& ctx, const std::vector<std::vector<AlgebraElement>>& lists) {
  if (ctx.kind() != RepContext::Kind::strict)
    throw InputError("the sum correspondence lives on the extended-space representation");
  const NaturalExtension& next = ctx.system().extension();
  CorrespondenceReport rep;
  for (const auto& coeffs : lists) {
    if (coeffs.empty()) throw InputError("empty coefficient list");
    ++rep.lists;
    TowerElement sum = next.from_transfer_sum(coeffs);
    int kmax = int(coeffs.size()) - 1;
    for (const BasisId& b : ctx.basis()) {
      std::vector<int> moves;
      for (int k = 0; k < kmax; ++k) moves.push_back(0);
      for (int k = 0; k < kmax; ++k) moves.push_back(1);
      if (!certify_moves(ctx, moves, b)) continue;
      SparseVector lhs = ctx.apply_mult_tower(sum, SparseVector::unit(b));
      SparseVector rhs;
      for (int k = 0; k <= kmax; ++k) {
        SparseVector term = SparseVector::unit(b);
        for (int i = 0; i < k; ++i) term = ctx.apply_u(term);
        term = ctx.apply_mult(coeffs[k], term);
        for (int i = 0; i < k; ++i) term = ctx.apply_u_star(term);
        rhs += term;
      }
      ++rep.vector_checks;
      if (lhs != rhs) ++rep.failures;
    }
  }
  return rep;
}

}  // namespace stardyn
