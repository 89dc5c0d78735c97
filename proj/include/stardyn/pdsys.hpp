#ifndef STARDYN_PDSYS_HPP
#define STARDYN_PDSYS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stardyn/finalg.hpp"

namespace stardyn {

/// A finite partial dynamical system: alpha maps a subset of the point set
/// into the point set.  In the finite discrete setting every subset is clopen,
/// so the topological hypotheses of the continuous theory hold automatically.
class PartialMap {
public:
  PartialMap() = default;
  /// images[x] = target of x, or nullopt when x lies outside the domain.
  PartialMap(std::vector<std::string> names, std::vector<std::optional<int>> images);

  int size() const { return int(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int x) const { return names_[x]; }

  bool in_domain(int x) const { return images_[x].has_value(); }
  int image(int x) const;

  std::set<int> domain() const;          // Delta_1
  std::set<int> range() const;           // Delta_{-1}
  bool total() const;
  bool injective() const;
  bool surjective() const;

  friend bool operator==(const PartialMap& a, const PartialMap& b) {
    return a.names_ == b.names_ && a.images_ == b.images_;
  }

private:
  std::vector<std::string> names_;
  std::vector<std::optional<int>> images_;
};

/// The commutative system delta(a)(x) = a(alpha(x)) (zero off the domain), in
/// Bratteli normal form over the algebra of functions on the point set.
StarEndomorphism induced_endomorphism(const PartialMap& m);

struct DomainIterates {
  std::vector<std::set<int>> forward;   // Delta_0 = X, Delta_1, ..., Delta_n
  std::vector<std::set<int>> backward;  // Delta_0, Delta_{-1}, ..., Delta_{-n}
};

DomainIterates iterate_domains(const PartialMap& m, int n);

struct DualityRow {
  std::string property;
  bool map_side = false;
  bool algebra_side = false;
};

/// The five dual correspondences between (X, alpha) and its induced system,
/// each side computed independently; disagreement is a contract violation.
std::vector<DualityRow> duality_report(const PartialMap& m);

struct CyclePoint {
  int cycle = 0;  // index into Cycles::orbits
  int phase = 0;  // position within the orbit
};

struct Cycles {
  /// Each orbit lists its points in forward order: alpha(orbit[i]) is the
  /// next entry (cyclically).  Orbits start at their smallest point.
  std::vector<std::vector<int>> orbits;
  std::vector<CyclePoint> points() const;
  std::optional<CyclePoint> locate(int x) const;
};

/// All cycles of alpha (the points that admit arbitrarily long forward and
/// backward iteration).
Cycles periodic_points(const PartialMap& m);

}  // namespace stardyn

#endif
