#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stardyn/matrix.hpp"

using namespace stardyn;

namespace {

std::mt19937_64 rng(20240611);

Scalar random_scalar() {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  return Scalar(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

Mat random_mat(int r, int c) {
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = random_scalar();
  return m;
}

}  // namespace

TEST_CASE("scalar field identities") {
  for (int t = 0; t < 200; ++t) {
    Scalar a = random_scalar(), b = random_scalar(), c = random_scalar();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK(a.conj().conj() == a);
    CHECK(a.abs2() >= 0);
    CHECK((a.abs2().is_zero()) == a.is_zero());
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), InputError);
}

TEST_CASE("matrix algebra") {
  for (int t = 0; t < 50; ++t) {
    Mat a = random_mat(3, 3), b = random_mat(3, 3), c = random_mat(3, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * b).adjoint() == b.adjoint() * a.adjoint());
    CHECK(Mat::identity(3) * a == a);
    CHECK((a * b).trace() == (b * a).trace());
  }
}

TEST_CASE("rank") {
  Mat m(3, 3);
  m.at(0, 0) = Scalar(1);
  m.at(1, 1) = Scalar(2);
  CHECK(rank(m) == 2);
  CHECK(rank(Mat::identity(4)) == 4);
  CHECK(rank(Mat::zero(3, 3)) == 0);
  Mat r1(2, 2);
  r1.at(0, 0) = Scalar(1);
  r1.at(0, 1) = Scalar(2);
  r1.at(1, 0) = Scalar(2);
  r1.at(1, 1) = Scalar(4);
  CHECK(rank(r1) == 1);
}

TEST_CASE("exact psd test") {
  Mat good(2, 2);
  good.at(0, 0) = Scalar(2);
  good.at(0, 1) = Scalar(1);
  good.at(1, 0) = Scalar(1);
  good.at(1, 1) = Scalar(2);
  CHECK(is_psd(good));

  Mat indef(2, 2);
  indef.at(0, 0) = Scalar(1);
  indef.at(0, 1) = Scalar(2);
  indef.at(1, 0) = Scalar(2);
  indef.at(1, 1) = Scalar(1);
  CHECK_FALSE(is_psd(indef));

  Mat offdiag(2, 2);
  offdiag.at(0, 1) = Scalar(1);
  offdiag.at(1, 0) = Scalar(1);
  CHECK_FALSE(is_psd(offdiag));

  Mat herm(2, 2);
  herm.at(0, 0) = Scalar(2);
  herm.at(0, 1) = Scalar::i();
  herm.at(1, 0) = -Scalar::i();
  herm.at(1, 1) = Scalar(2);
  CHECK(is_psd(herm));

  CHECK(is_psd(Mat::zero(3, 3)));

  // x*x is always psd
  for (int t = 0; t < 50; ++t) {
    Mat x = random_mat(3, 3);
    CHECK(is_psd(x.adjoint() * x));
  }
}

TEST_CASE("span builder") {
  SpanBuilder sb(3);
  CHECK(sb.add({Scalar(1), Scalar(0), Scalar(1)}));
  CHECK(sb.add({Scalar(0), Scalar(1), Scalar(1)}));
  CHECK_FALSE(sb.add({Scalar(1), Scalar(1), Scalar(2)}));
  CHECK(sb.dim() == 2);
  CHECK(sb.contains({Scalar(2), Scalar(-1), Scalar(1)}));
  CHECK_FALSE(sb.contains({Scalar(0), Scalar(0), Scalar(1)}));

  auto coords = sb.coordinates({Scalar(2), Scalar(3), Scalar(5)});
  REQUIRE(coords.has_value());
  // reconstruct: 2*(1,0,1) + 3*(0,1,1) = (2,3,5)
  CHECK((*coords)[0] == Scalar(2));
  CHECK((*coords)[1] == Scalar(3));
}

TEST_CASE("span builder coordinates on random spans") {
  for (int t = 0; t < 30; ++t) {
    std::vector<Vec> accepted;
    SpanBuilder sb(4);
    for (int k = 0; k < 6; ++k) {
      Mat m = random_mat(1, 4);
      Vec v(m.data().begin(), m.data().end());
      if (sb.add(v)) accepted.push_back(v);
    }
    // random combination of accepted vectors must round-trip
    Vec target(4);
    std::vector<Scalar> cs;
    for (const Vec& v : accepted) {
      Scalar c = random_scalar();
      cs.push_back(c);
      for (int i = 0; i < 4; ++i) target[i] += c * v[i];
    }
    auto coords = sb.coordinates(target);
    REQUIRE(coords.has_value());
    for (std::size_t i = 0; i < accepted.size(); ++i) CHECK((*coords)[i] == cs[i]);
  }
}

TEST_CASE("linear solver") {
  // columns of a rank-2 map R^2 -> R^3
  std::vector<Vec> cols = {{Scalar(1), Scalar(0), Scalar(1)}, {Scalar(1), Scalar(1), Scalar(0)}};
  LinearSolver ls(cols);
  CHECK(ls.rank() == 2);
  auto x = ls.solve({Scalar(3), Scalar(1), Scalar(2)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Scalar(2));
  CHECK((*x)[1] == Scalar(1));
  CHECK_FALSE(ls.solve({Scalar(0), Scalar(0), Scalar(1)}).has_value());
  CHECK(ls.kernel_basis().empty());

  std::vector<Vec> cols2 = {{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}};
  LinearSolver ls2(cols2);
  CHECK(ls2.rank() == 1);
  auto k = ls2.kernel_basis();
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] * Scalar(1) + k[0][1] * Scalar(2) == Scalar(0));
}
