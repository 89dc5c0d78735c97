#include "stardyn/pdsys.hpp"

#include <algorithm>

#include "stardyn/transfer.hpp"

namespace stardyn {

PartialMap::PartialMap(std::vector<std::string> names, std::vector<std::optional<int>> images)
    : names_(std::move(names)), images_(std::move(images)) {
  if (names_.empty()) throw InputError("partial map needs a nonempty point set");
  if (names_.size() != images_.size()) throw InputError("partial map image list size mismatch");
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw InputError("duplicate point names");
  for (const auto& img : images_)
    if (img && (*img < 0 || *img >= size())) throw InputError("image point out of range");
}

int PartialMap::image(int x) const {
  if (!in_domain(x)) throw DomainError("point outside the domain of alpha");
  return *images_[x];
}

std::set<int> PartialMap::domain() const {
  std::set<int> d;
  for (int x = 0; x < size(); ++x)
    if (in_domain(x)) d.insert(x);
  return d;
}

std::set<int> PartialMap::range() const {
  std::set<int> r;
  for (int x = 0; x < size(); ++x)
    if (in_domain(x)) r.insert(image(x));
  return r;
}

bool PartialMap::total() const { return int(domain().size()) == size(); }

bool PartialMap::injective() const {
  return range().size() == domain().size();
}

bool PartialMap::surjective() const { return int(range().size()) == size(); }

StarEndomorphism induced_endomorphism(const PartialMap& m) {
  MultiMatrixAlgebra a(std::vector<int>(m.size(), 1));
  std::vector<EndoTargetBlock> targets;
  for (int x = 0; x < m.size(); ++x) {
    if (m.in_domain(x))
      targets.push_back({{m.image(x)}, 0, Mat::identity(1)});
    else
      targets.push_back({{}, 1, Mat::identity(1)});
  }
  return StarEndomorphism(a, a, std::move(targets));
}

DomainIterates iterate_domains(const PartialMap& m, int n) {
  if (n < 0) throw InputError("iterate_domains needs n >= 0");
  DomainIterates out;
  std::set<int> all;
  for (int x = 0; x < m.size(); ++x) all.insert(x);
  out.forward.push_back(all);
  out.backward.push_back(all);
  for (int k = 1; k <= n; ++k) {
    std::set<int> fwd;
    for (int x : m.domain())
      if (out.forward.back().count(m.image(x))) fwd.insert(x);
    out.forward.push_back(std::move(fwd));
    std::set<int> bwd;
    for (int x : out.backward.back())
      if (m.in_domain(x)) bwd.insert(m.image(x));
    out.backward.push_back(std::move(bwd));
  }
  return out;
}

std::vector<DualityRow> duality_report(const PartialMap& m) {
  StarEndomorphism delta = induced_endomorphism(m);
  EndoClassification cls = classify(delta);
  CompletenessReport comp = completeness_report(delta);

  std::vector<DualityRow> rows;
  rows.push_back({"monomorphism <-> surjection", m.surjective(), cls.mono});
  rows.push_back({"unital <-> total domain", m.total(), cls.unital});
  rows.push_back({"epimorphism <-> total injection", m.injective() && m.total(), cls.epi});
  // Finite discrete spaces: every image is open, every kernel ideal is unital.
  rows.push_back({"unital kernel <-> open image", true, cls.unital_kernel});
  rows.push_back({"complete transfer <-> injection with open image", m.injective(), comp.complete});

  for (const DualityRow& r : rows)
    if (r.map_side != r.algebra_side)
      throw ContractViolation("duality table mismatch: " + r.property);
  return rows;
}

std::vector<CyclePoint> Cycles::points() const {
  std::vector<CyclePoint> out;
  for (int c = 0; c < int(orbits.size()); ++c)
    for (int p = 0; p < int(orbits[c].size()); ++p) out.push_back({c, p});
  return out;
}

std::optional<CyclePoint> Cycles::locate(int x) const {
  for (int c = 0; c < int(orbits.size()); ++c)
    for (int p = 0; p < int(orbits[c].size()); ++p)
      if (orbits[c][p] == x) return CyclePoint{c, p};
  return std::nullopt;
}

Cycles periodic_points(const PartialMap& m) {
  Cycles out;
  std::vector<bool> placed(m.size(), false);
  for (int start = 0; start < m.size(); ++start) {
    if (placed[start]) continue;
    // march forward up to |X| steps looking for a return to start
    int y = start;
    bool cycles_back = false;
    for (int steps = 0; steps < m.size(); ++steps) {
      if (!m.in_domain(y)) break;
      y = m.image(y);
      if (y == start) {
        cycles_back = true;
        break;
      }
    }
    if (!cycles_back) continue;
    std::vector<int> orbit{start};
    for (int y2 = m.image(start); y2 != start; y2 = m.image(y2)) orbit.push_back(y2);
    int min_pos = int(std::min_element(orbit.begin(), orbit.end()) - orbit.begin());
    std::rotate(orbit.begin(), orbit.begin() + min_pos, orbit.end());
    for (int x : orbit) placed[x] = true;
    out.orbits.push_back(std::move(orbit));
  }
  std::sort(out.orbits.begin(), out.orbits.end());
  return out;
}

}  // namespace stardyn
