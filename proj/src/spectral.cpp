#include "stardyn/spectral.hpp"

#include <algorithm>
#include <sstream>

namespace stardyn {

ExtPoint ExtPoint::path(std::vector<int> coords) {
  if (coords.empty()) throw InputError("path point needs at least one coordinate");
  ExtPoint p;
  p.kind_ = Kind::path;
  p.data_ = std::move(coords);
  return p;
}

ExtPoint ExtPoint::cycle(int orbit, int phase) {
  ExtPoint p;
  p.kind_ = Kind::cycle;
  p.data_ = {orbit, phase};
  return p;
}

const std::vector<int>& ExtPoint::path_coords() const {
  if (!is_path()) throw InputError("not a path point");
  return data_;
}

int ExtPoint::path_length() const { return int(path_coords().size()) - 1; }

int ExtPoint::orbit() const {
  if (!is_cycle()) throw InputError("not a cycle point");
  return data_[0];
}

int ExtPoint::phase() const {
  if (!is_cycle()) throw InputError("not a cycle point");
  return data_[1];
}

int LevelSpectrum::size() const {
  int n = 0;
  for (const auto& s : slots) n += int(s.size());
  return n;
}

std::vector<SpectrumPoint> LevelSpectrum::points() const {
  std::vector<SpectrumPoint> out;
  for (int s = 0; s < int(slots.size()); ++s)
    for (int i = 0; i < int(slots[s].size()); ++i) out.push_back({s, slots[s][i]});
  return out;
}

bool LevelSpectrum::contains(const SpectrumPoint& p) const {
  if (p.slot < 0 || p.slot >= int(slots.size())) return false;
  return std::find(slots[p.slot].begin(), slots[p.slot].end(), p.point) != slots[p.slot].end();
}

ExtendedSystem::ExtendedSystem(PartialMap m)
    : map_(std::move(m)),
      cycles_(periodic_points(map_)),
      next_(induced_endomorphism(map_)) {
  DomainIterates it = iterate_domains(map_, map_.size() + 2);
  fwd_ = std::move(it.forward);
  bwd_ = std::move(it.backward);
}

const std::set<int>& ExtendedSystem::delta_fwd(int k) const {
  return fwd_[std::min<std::size_t>(k, fwd_.size() - 1)];
}

const std::set<int>& ExtendedSystem::delta_bwd(int k) const {
  return bwd_[std::min<std::size_t>(k, bwd_.size() - 1)];
}

int ExtendedSystem::coordinate(const ExtPoint& p, int n) const {
  if (p.is_path()) {
    if (n > p.path_length()) throw InputError("path point has no such coordinate");
    return p.path_coords()[n];
  }
  const std::vector<int>& orbit = cycles_.orbits.at(p.orbit());
  int len = int(orbit.size());
  // anti-orbit: x_n is the point n backward steps along the cycle
  int idx = ((p.phase() - n) % len + len) % len;
  return orbit[idx];
}

bool ExtendedSystem::has_coordinate(const ExtPoint& p, int n) const {
  return p.is_cycle() || n <= p.path_length();
}

bool ExtendedSystem::in_domain_tilde(const ExtPoint& p) const {
  return map_.in_domain(coordinate(p, 0));
}

bool ExtendedSystem::in_range_tilde(const ExtPoint& p) const { return has_coordinate(p, 1); }

ExtPoint ExtendedSystem::validate_point(const ExtPoint& p) const {
  if (p.is_path()) {
    const auto& c = p.path_coords();
    for (int x : c)
      if (x < 0 || x >= map_.size()) throw InputError("path coordinate out of range");
    for (std::size_t k = 1; k < c.size(); ++k)
      if (!map_.in_domain(c[k]) || map_.image(c[k]) != c[k - 1])
        throw InputError("path coordinates violate the anti-orbit chain");
    if (map_.range().count(c.back())) throw InputError("last path coordinate lies in the range");
    return p;
  }
  if (p.orbit() < 0 || p.orbit() >= int(cycles_.orbits.size()))
    throw InputError("cycle index out of range");
  if (p.phase() < 0 || p.phase() >= int(cycles_.orbits[p.orbit()].size()))
    throw InputError("cycle phase out of range");
  return p;
}

ExtPoint ExtendedSystem::alpha_tilde(const ExtPoint& p) const {
  if (!in_domain_tilde(p)) throw DomainError("point outside the extended domain");
  if (p.is_cycle()) {
    int len = int(cycles_.orbits[p.orbit()].size());
    return ExtPoint::cycle(p.orbit(), (p.phase() + 1) % len);
  }
  std::vector<int> coords;
  coords.push_back(map_.image(coordinate(p, 0)));
  coords.insert(coords.end(), p.path_coords().begin(), p.path_coords().end());
  return ExtPoint::path(std::move(coords));
}

ExtPoint ExtendedSystem::alpha_tilde_inv(const ExtPoint& p) const {
  if (!in_range_tilde(p)) throw DomainError("point outside the extended range");
  if (p.is_cycle()) {
    int len = int(cycles_.orbits[p.orbit()].size());
    return ExtPoint::cycle(p.orbit(), ((p.phase() - 1) % len + len) % len);
  }
  return ExtPoint::path(
      std::vector<int>(p.path_coords().begin() + 1, p.path_coords().end()));
}

std::vector<ExtPoint> ExtendedSystem::enumerate_points(int n_max) const {
  if (n_max < 0) throw InputError("enumerate_points needs n_max >= 0");
  std::vector<ExtPoint> out;
  long count = 0;
  const std::set<int> range_set = map_.range();
  for (int n = 0; n <= n_max; ++n) {
    for (int x : delta_fwd(n)) {
      if (range_set.count(x)) continue;
      // the anti-orbit with last coordinate x: (alpha^n(x), ..., alpha(x), x)
      std::vector<int> coords(n + 1);
      int y = x;
      for (int k = n; k >= 0; --k) {
        coords[k] = y;
        if (k > 0) y = map_.image(y);
      }
      out.push_back(ExtPoint::path(std::move(coords)));
      if (++count > point_limit_)
        throw InputError("point enumeration exceeds the configured limit");
    }
  }
  for (const CyclePoint& c : cycles_.points()) {
    out.push_back(ExtPoint::cycle(c.cycle, c.phase));
    if (++count > point_limit_)
      throw InputError("point enumeration exceeds the configured limit");
  }
  return out;
}

LevelSpectrum ExtendedSystem::level_spectrum(int n) const {
  if (n < 0) throw InputError("negative level");
  LevelSpectrum ls;
  ls.level = n;
  const std::set<int> range_set = map_.range();
  for (int k = 0; k < n; ++k) {
    std::vector<int> slot;
    for (int x : delta_fwd(k))
      if (!range_set.count(x)) slot.push_back(x);
    ls.slots.push_back(std::move(slot));
  }
  ls.slots.push_back(std::vector<int>(delta_fwd(n).begin(), delta_fwd(n).end()));
  return ls;
}

SpectrumPoint ExtendedSystem::level_bonding(int n, const SpectrumPoint& p) const {
  LevelSpectrum upper = level_spectrum(n + 1);
  if (!upper.contains(p)) throw InputError("bonding applied to a point outside the spectrum");
  if (p.slot <= n) return p;
  return SpectrumPoint{n, map_.image(p.point)};
}

Scalar ExtendedSystem::evaluate_at_level(const TowerElement& x, const SpectrumPoint& p) const {
  if (p.slot < 0 || p.slot > x.level) throw InputError("spectrum slot out of range");
  return x.coords[p.slot].coord(p.point);
}

Scalar ExtendedSystem::evaluate(const TowerElement& x, const ExtPoint& p) const {
  // The level-x.level coordinate of p sits on the diagonal slot while the
  // sequence allows, then stays in the slot it slid off at.
  int slot = p.is_cycle() ? x.level : std::min(x.level, p.path_length());
  return evaluate_at_level(x, SpectrumPoint{slot, coordinate(p, slot)});
}

std::vector<Scalar> ExtendedSystem::functional_sequence(const ExtPoint& p,
                                                        const AlgebraElement& a,
                                                        int n_max) const {
  std::vector<Scalar> out;
  TowerElement t = next_.inject(a);
  for (int n = 0; n <= n_max; ++n) {
    out.push_back(evaluate(t, p));
    if (n < n_max) t = next_.ext_transfer(t);
  }
  return out;
}

std::string ExtendedSystem::point_label(const ExtPoint& p) const {
  std::ostringstream os;
  if (p.is_path()) {
    os << "(";
    for (int k = 0; k <= p.path_length(); ++k) {
      if (k) os << ",";
      os << map_.name(p.path_coords()[k]);
    }
    os << ")";
  } else {
    os << "cyc" << p.orbit() << "@" << map_.name(cycles_.orbits[p.orbit()][p.phase()]);
  }
  return os.str();
}

SpectralCheckReport ExtendedSystem::verify(int depth) const {
  if (depth < 1) throw InputError("verify needs depth >= 1");
  SpectralCheckReport rep;

  for (int n = 0; n <= depth; ++n) {
    LevelSpectrum ls = level_spectrum(n);
    if (ls.size() != next_.level_dim(n)) rep.dimension_duality = false;
    // slots carry exactly the supports of the summand projections
    for (int k = 0; k <= n; ++k) {
      AlgebraElement e = next_.summand_unit(n, k);
      for (int x = 0; x < map_.size(); ++x) {
        bool in_slot = std::find(ls.slots[k].begin(), ls.slots[k].end(), x) != ls.slots[k].end();
        if ((e.coord(x) == Scalar(1)) != in_slot) rep.dimension_duality = false;
      }
    }
  }

  for (int n = 0; n < depth; ++n) {
    LevelSpectrum upper = level_spectrum(n + 1);
    for (const TowerElement& b : next_.level_basis(n))
      for (const SpectrumPoint& p : upper.points()) {
        Scalar lhs = evaluate_at_level(next_.embed_level(b), p);
        Scalar rhs = evaluate_at_level(b, level_bonding(n, p));
        if (lhs != rhs) rep.bonding_duality = false;
      }
  }

  std::vector<ExtPoint> points = enumerate_points(depth);
  std::vector<TowerElement> elems;
  for (const AlgebraElement& b : matrix_unit_basis(next_.base()))
    elems.push_back(next_.inject(b));
  for (const TowerElement& b : next_.level_basis(std::min(depth, 2))) elems.push_back(b);

  for (const ExtPoint& p : points) {
    for (const TowerElement& x : elems) {
      Scalar lhs_d = evaluate(next_.ext_delta(x), p);
      Scalar rhs_d =
          in_domain_tilde(p) ? evaluate(x, alpha_tilde(p)) : Scalar(0);
      if (lhs_d != rhs_d) rep.dynamics_duality = false;

      Scalar lhs_t = evaluate(next_.ext_transfer(x), p);
      Scalar rhs_t = in_range_tilde(p) ? evaluate(x, alpha_tilde_inv(p)) : Scalar(0);
      if (lhs_t != rhs_t) rep.dynamics_duality = false;
    }
    if (in_domain_tilde(p)) {
      if (alpha_tilde_inv(alpha_tilde(p)) != p) rep.inverse_round_trips = false;
    }
    if (in_range_tilde(p)) {
      if (alpha_tilde(alpha_tilde_inv(p)) != p) rep.inverse_round_trips = false;
    }
  }

  if (!rep.all()) throw ContractViolation("extended-system duality check failed");
  return rep;
}

}  // namespace stardyn
