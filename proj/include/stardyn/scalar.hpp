#ifndef STARDYN_SCALAR_HPP
#define STARDYN_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace stardyn {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown on malformed user input (bad descriptors, shape mismatches,
/// out-of-domain queries that the caller should have guarded).
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a point of the extended system is moved outside the
/// domain of the map that is being applied.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an identity that the theory guarantees fails to hold in an
/// exact computation.  Reaching this is a bug, never a data problem.
class ContractViolation : public std::logic_error {
public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// Gaussian rational a + bi with exact rational coordinates.  All arithmetic
/// in the library runs over this field, so every identity can be tested as
/// literal equality.
class Scalar {
public:
  Scalar() = default;
  Scalar(int v) : re_(v) {}  // NOLINT: implicit by design, mirrors numeric literals
  Scalar(Rational re) : re_(std::move(re)) {}
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  Scalar conj() const { return Scalar(re_, -im_); }
  /// |z|^2, a non-negative rational.
  Rational abs2() const { return re_ * re_ + im_ * im_; }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    Rational d = o.abs2();
    if (d.is_zero()) throw InputError("scalar division by zero");
    Rational r = (re_ * o.re_ + im_ * o.im_) / d;
    im_ = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.re_, -a.im_); }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Lexicographic order; used only for canonical container keys.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  std::string str() const;

private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& z);

inline Scalar frac(long num, long den) { return Scalar(Rational(num, den)); }

}  // namespace stardyn

#endif
