#ifndef STARDYN_SPECTRAL_HPP
#define STARDYN_SPECTRAL_HPP

#include <string>
#include <vector>

#include "stardyn/natext.hpp"
#include "stardyn/pdsys.hpp"

namespace stardyn {

/// A point of the extended space: either a finite maximal anti-orbit
/// (x_0, ..., x_N) with alpha(x_k) = x_{k-1} and x_N outside the range, or a
/// point of a cycle together with its phase.  Over a finite point set the
/// infinite anti-orbits are exactly the backward orbits of cycle points, so
/// the cycle encoding is complete (the brute-force oracle in the tests guards
/// this).
class ExtPoint {
public:
  enum class Kind { path, cycle };

  static ExtPoint path(std::vector<int> coords);
  static ExtPoint cycle(int orbit, int phase);

  Kind kind() const { return kind_; }
  bool is_path() const { return kind_ == Kind::path; }
  bool is_cycle() const { return kind_ == Kind::cycle; }

  const std::vector<int>& path_coords() const;
  int path_length() const;  // N (coords.size() - 1)
  int orbit() const;
  int phase() const;

  friend bool operator==(const ExtPoint& a, const ExtPoint& b) {
    return a.kind_ == b.kind_ && a.data_ == b.data_;
  }
  friend bool operator!=(const ExtPoint& a, const ExtPoint& b) { return !(a == b); }
  friend bool operator<(const ExtPoint& a, const ExtPoint& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    return a.data_ < b.data_;
  }

private:
  Kind kind_ = Kind::path;
  std::vector<int> data_;  // path: coords; cycle: {orbit, phase}
};

struct SpectrumPoint {
  int slot = 0;
  int point = 0;
  friend bool operator==(const SpectrumPoint& a, const SpectrumPoint& b) {
    return a.slot == b.slot && a.point == b.point;
  }
};

/// The level-n spectrum: the disjoint union
/// (X \ D_{-1}) u (D_1 \ D_{-1}) u ... u (D_{n-1} \ D_{-1}) u D_n.
struct LevelSpectrum {
  int level = 0;
  std::vector<std::vector<int>> slots;
  int size() const;
  std::vector<SpectrumPoint> points() const;
  bool contains(const SpectrumPoint& p) const;
};

struct SpectralCheckReport {
  bool dimension_duality = true;   // |X~_n| = dim B_n
  bool bonding_duality = true;     // level bonding is dual to the level embedding
  bool dynamics_duality = true;    // alpha~ matches ext_delta / ext_transfer
  bool inverse_round_trips = true;
  bool all() const {
    return dimension_duality && bonding_duality && dynamics_duality && inverse_round_trips;
  }
};

/// The extended dynamical system of a finite partial map, bridged to the
/// inductive-limit extension of its induced algebra system.
class ExtendedSystem {
public:
  explicit ExtendedSystem(PartialMap m);

  ExtendedSystem(const ExtendedSystem&) = delete;
  ExtendedSystem& operator=(const ExtendedSystem&) = delete;

  const PartialMap& map() const { return map_; }
  const Cycles& cycles() const { return cycles_; }
  const NaturalExtension& extension() const { return next_; }

  /// Maximum number of points an enumeration may produce (combinatorial guard).
  void set_point_limit(long limit) { point_limit_ = limit; }

  /// x_n of the expanded sequence; paths must have n <= N.
  int coordinate(const ExtPoint& p, int n) const;
  bool has_coordinate(const ExtPoint& p, int n) const;
  bool in_domain_tilde(const ExtPoint& p) const;  // x_0 in D_1
  bool in_range_tilde(const ExtPoint& p) const;   // a second coordinate exists

  ExtPoint alpha_tilde(const ExtPoint& p) const;
  ExtPoint alpha_tilde_inv(const ExtPoint& p) const;

  /// All path points with N <= n_max plus all cycle points, duplicate-free.
  std::vector<ExtPoint> enumerate_points(int n_max) const;

  LevelSpectrum level_spectrum(int n) const;
  /// The bonding map X~_{n+1} -> X~_n (identity on matching slots, alpha off
  /// the last slot).
  SpectrumPoint level_bonding(int n, const SpectrumPoint& p) const;

  /// Value of a tower element at a point, through the level-spectrum slot the
  /// point occupies at the element's level.
  Scalar evaluate(const TowerElement& x, const ExtPoint& p) const;
  /// Value of a level-n element at a level-n spectrum point.
  Scalar evaluate_at_level(const TowerElement& x, const SpectrumPoint& p) const;

  /// n-th entry: value of ext_transfer^n(inject(a)) at p.
  std::vector<Scalar> functional_sequence(const ExtPoint& p, const AlgebraElement& a,
                                          int n_max) const;

  /// Runs the dimension, bonding and dynamics dualities up to the given depth;
  /// any failure is a contract violation.
  SpectralCheckReport verify(int depth) const;

  std::string point_label(const ExtPoint& p) const;
  ExtPoint validate_point(const ExtPoint& p) const;  // checks chain conditions

private:
  PartialMap map_;
  Cycles cycles_;
  NaturalExtension next_;
  // Domain iterates stabilise after |X| steps, so a fixed prefix suffices.
  std::vector<std::set<int>> fwd_;
  std::vector<std::set<int>> bwd_;
  long point_limit_ = 10000;

  const std::set<int>& delta_fwd(int k) const;
  const std::set<int>& delta_bwd(int k) const;
};

}  // namespace stardyn

#endif
