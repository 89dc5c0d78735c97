#include "stardyn/scalar.hpp"

#include <ostream>
#include <sstream>

namespace stardyn {

std::string Scalar::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& z) {
  if (z.im().is_zero()) return os << z.re();
  if (z.re().is_zero()) return os << z.im() << "i";
  os << z.re();
  if (z.im() > 0) os << "+";
  return os << z.im() << "i";
}

}  // namespace stardyn
