#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stardyn/covrep.hpp"
#include "support/fixtures.hpp"

using namespace stardyn;
using namespace stardyn::testing;

namespace {

std::vector<std::string> pts(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

PartialMap map_id() { return PartialMap(pts(1), {0}); }
PartialMap map_const3() { return PartialMap(pts(3), {0, 0, 0}); }
PartialMap map_shift3() { return PartialMap(pts(3), {1, 2, std::nullopt}); }
PartialMap map_merge() { return PartialMap(pts(3), {0, 0, 1}); }

const std::set<CRFlag> all_flags{CRFlag::cr1, CRFlag::cr1_prime, CRFlag::cr1_doubleprime,
                                 CRFlag::cr2, CRFlag::cr3};

ExtPoint P(std::vector<int> coords) { return ExtPoint::path(std::move(coords)); }

std::mt19937_64 rng(55117);

PartialMap random_map(int max_points) {
  std::uniform_int_distribution<int> npts(1, max_points);
  int n = npts(rng);
  std::uniform_int_distribution<int> img(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 9);
  std::vector<std::optional<int>> images(n);
  for (int x = 0; x < n; ++x)
    if (coin(rng) < 7) images[x] = img(rng);
  return PartialMap(pts(n), std::move(images));
}

SparseVector random_sparse(const RepContext& ctx) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<std::size_t> pick(0, ctx.basis().size() - 1);
  SparseVector v;
  for (int k = 0; k < 4; ++k) {
    const BasisId& b = ctx.basis()[pick(rng)];
    v.set(b, v.at(b) + Scalar(Rational(num(rng)), Rational(num(rng))));
  }
  return v;
}

}  // namespace

TEST_CASE("strict representation shift action") {
  auto ctx = RepContext::strict(map_merge(), 4);
  CHECK(ctx->apply_u(SparseVector::unit(P({1, 2}))) == SparseVector::unit(P({2})));
  CHECK(ctx->apply_u(SparseVector::unit(P({2}))).is_zero());
  BasisId cyc = ExtPoint::cycle(0, 0);
  CHECK(ctx->apply_u(SparseVector::unit(cyc)) == SparseVector::unit(cyc));

  auto shift = RepContext::strict(map_shift3(), 5);
  CHECK(shift->apply_u_star(SparseVector::unit(P({0}))) == SparseVector::unit(P({1, 0})));

  auto id = RepContext::strict(map_id(), 3);
  for (const BasisId& b : id->basis())
    CHECK(id->apply_u(SparseVector::unit(b)) == SparseVector::unit(b));
}

TEST_CASE("partial isometry identities on random sparse vectors") {
  for (auto m : {map_id(), map_const3(), map_shift3(), map_merge()}) {
    auto ctx = RepContext::strict(std::move(m), 4);
    for (int t = 0; t < 15; ++t) {
      SparseVector v = random_sparse(*ctx);
      SparseVector uv = ctx->apply_u(v);
      CHECK(ctx->apply_u(ctx->apply_u_star(uv)) == uv);
      SparseVector sv = ctx->apply_u_star(v);
      CHECK(ctx->apply_u_star(ctx->apply_u(sv)) == sv);
    }
  }
}

TEST_CASE("strict contexts satisfy every covariance relation") {
  for (auto m : {map_id(), map_const3(), map_shift3(), map_merge()}) {
    auto ctx = RepContext::strict(std::move(m), 5);
    CRReport rep = verify_cr(*ctx, all_flags);
    for (const auto& rel : rep.relations) {
      CHECK(rel.pass());
      CHECK(rel.conclusive());
    }
  }
}

TEST_CASE("strict contexts on random maps") {
  for (int t = 0; t < 25; ++t) {
    auto ctx = RepContext::strict(random_map(6), 4);
    CRReport rep = verify_cr(*ctx, all_flags);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("certified counts on the bundled fixtures at depth 5") {
  auto merge = RepContext::strict(map_merge(), 5);
  CRReport rep = verify_cr(*merge, all_flags);
  CHECK(rep.certified_checks() >= 50);
  CHECK(rep.relation(CRFlag::cr2).excluded > 0);  // the longest path is boundary

  auto shift = RepContext::strict(map_shift3(), 5);
  CRReport rep2 = verify_cr(*shift, all_flags);
  CHECK(rep2.saturated);  // the whole extended space fits below the depth
  for (const auto& rel : rep2.relations) CHECK(rel.excluded == 0);
}

TEST_CASE("direct-sum representation action") {
  auto ctx = RepContext::tower_of_copies(map_shift3(), 4);
  // alpha(0) = 1, so alpha^{-1}(1) = 0
  for (int n = 1; n <= 4; ++n)
    CHECK(ctx->apply_u(SparseVector::unit(PairBasis{1, n})) ==
          SparseVector::unit(PairBasis{0, n - 1}));
  for (int y = 0; y < 3; ++y)
    CHECK(ctx->apply_u(SparseVector::unit(PairBasis{y, 0})).is_zero());

  CHECK_THROWS_AS((void)RepContext::tower_of_copies(map_merge(), 3), InputError);
  CHECK_THROWS_AS((void)RepContext::tower_of_copies(map_const3(), 3), InputError);
}

TEST_CASE("direct-sum representation is covariant but not strict") {
  for (auto m : {map_id(), map_shift3()}) {
    auto ctx = RepContext::tower_of_copies(std::move(m), 5);
    CRReport rep = verify_cr(*ctx, all_flags);
    CHECK(rep.relation(CRFlag::cr1).pass());
    CHECK(rep.relation(CRFlag::cr1_prime).pass());
    CHECK(rep.relation(CRFlag::cr2).pass());
    CHECK_FALSE(rep.relation(CRFlag::cr1_doubleprime).pass());
    CHECK_FALSE(rep.relation(CRFlag::cr3).pass());
  }
}

TEST_CASE("the isometry defect sits exactly on copy zero") {
  auto ctx = RepContext::tower_of_copies(map_shift3(), 4);
  // 1 - U*U acts as the identity on copy 0 over the range of alpha
  AlgebraElement one = AlgebraElement::one(ctx->endo().source());
  for (int x : ctx->map().range()) {
    SparseVector e = SparseVector::unit(PairBasis{x, 0});
    SparseVector uue = ctx->apply_u_star(ctx->apply_u(e));
    CHECK(uue.is_zero());
    SparseVector gap = ctx->apply_mult(one, e) + uue.scaled(Scalar(-1));
    CHECK(gap == e);
  }
  StructuralReport s = structural_checks(*ctx);
  CHECK(s.uu_below_p);
  CHECK_FALSE(s.uu_equals_p);
  CHECK(s.gap_on_copy0);
  CHECK(s.compressed_algebra_faithful);
  CHECK(s.kernel_match);
  CHECK(s.t1_iso);
  CHECK(s.t2_epi);
}

TEST_CASE("one-sided shift pattern for the identity map") {
  auto ctx = RepContext::tower_of_copies(map_id(), 4);
  for (int n = 0; n <= 4; ++n) {
    SparseVector e = SparseVector::unit(PairBasis{0, n});
    SparseVector uue = ctx->apply_u_star(ctx->apply_u(e));
    CHECK(uue == (n == 0 ? SparseVector() : e));
  }
}

TEST_CASE("structural checks on strict contexts") {
  auto merge = RepContext::strict(map_merge(), 5);
  StructuralReport s = structural_checks(*merge);
  CHECK(s.uu_below_p);
  CHECK(s.uu_equals_p);  // strictness: U*U = P
  CHECK(s.p_in_commutant);
  CHECK(s.uu_in_commutant);
  CHECK(s.kernel_match);
  CHECK(s.iso_pair);
  CHECK(s.t1_iso);
  CHECK(s.t2_epi);
  CHECK(s.ideal_match);
  CHECK(s.unitized_rep_ok);

  auto id = RepContext::strict(map_id(), 4);
  StructuralReport si = structural_checks(*id);
  CHECK(si.uu_equals_p);
  CHECK(si.unitized_rep_ok);
}

TEST_CASE("structural checks on random maps") {
  for (int t = 0; t < 15; ++t) {
    auto ctx = RepContext::strict(random_map(6), 4);
    StructuralReport s = structural_checks(*ctx);
    CHECK(s.uu_below_p);
    CHECK(s.uu_equals_p);
    CHECK(s.kernel_match);
    CHECK(s.iso_pair);
    CHECK(s.t1_iso);
    CHECK(s.t2_epi);
    CHECK(s.ideal_match);
    CHECK(s.unitized_rep_ok);
  }
}

TEST_CASE("surjective maps give isometries") {
  // alpha surjective <-> delta mono <-> U an isometry on the whole basis
  PartialMap cycle3(pts(3), {1, 2, 0});
  for (auto m : {map_id(), cycle3}) {
    auto ctx = RepContext::strict(std::move(m), 4);
    for (const BasisId& b : ctx->basis()) {
      SparseVector e = SparseVector::unit(b);
      CHECK(ctx->apply_u_star(ctx->apply_u(e)) == e);
    }
  }
}

TEST_CASE("sum correspondence worked example") {
  auto ctx = RepContext::strict(map_merge(), 5);
  const auto& a3 = ctx->endo().source();
  AlgebraElement a = diag(a3, {2, 3, 5});

  // only the k = 1 term: both routes scale e_(1,2) by 5
  std::vector<std::vector<AlgebraElement>> lists{{AlgebraElement::zero(a3), a}};
  CorrespondenceReport rep = correspondence_check(*ctx, lists);
  CHECK(rep.pass());
  CHECK(rep.vector_checks > 0);

  const NaturalExtension& next = ctx->system().extension();
  TowerElement sum = next.from_transfer_sum({AlgebraElement::zero(a3), a});
  SparseVector lhs = ctx->apply_mult_tower(sum, SparseVector::unit(P({1, 2})));
  CHECK(lhs == SparseVector::unit(P({1, 2})).scaled(Scalar(5)));

  std::vector<std::vector<AlgebraElement>> zeros{{AlgebraElement::zero(a3),
                                                  AlgebraElement::zero(a3)}};
  CHECK(correspondence_check(*ctx, zeros).pass());
}

TEST_CASE("sum correspondence on random coefficients") {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> len(1, 3);
  for (auto m : {map_const3(), map_merge(), map_shift3()}) {
    auto ctx = RepContext::strict(std::move(m), 5);
    const auto& alg = ctx->endo().source();
    std::vector<std::vector<AlgebraElement>> lists;
    for (int t = 0; t < 10; ++t) {
      std::vector<AlgebraElement> coeffs;
      int n = len(rng);
      for (int k = 0; k < n; ++k) {
        std::vector<Scalar> c;
        for (int j = 0; j < alg.block_count(); ++j)
          c.push_back(Scalar(Rational(num(rng)), Rational(num(rng))));
        coeffs.push_back(AlgebraElement::diagonal(alg, c));
      }
      lists.push_back(std::move(coeffs));
    }
    CorrespondenceReport rep = correspondence_check(*ctx, lists);
    CHECK(rep.pass());
    CHECK(rep.vector_checks > 0);
  }
}
