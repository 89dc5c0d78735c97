#ifndef STARDYN_TESTS_ORACLES_HPP
#define STARDYN_TESTS_ORACLES_HPP

#include <set>
#include <vector>

#include "stardyn/pdsys.hpp"

namespace stardyn::testing {

/// Preimage lists of alpha.
inline std::vector<std::vector<int>> preimages(const PartialMap& m) {
  std::vector<std::vector<int>> pre(m.size());
  for (int x = 0; x < m.size(); ++x)
    if (m.in_domain(x)) pre[m.image(x)].push_back(x);
  return pre;
}

/// S[k] = points starting some anti-orbit with k coordinates (S[1] = X).
/// Dynamic programming over the defining recursion; independent of the cycle
/// machinery it is used to check.
inline std::vector<std::set<int>> antiorbit_start_sets(const PartialMap& m, int len) {
  auto pre = preimages(m);
  std::vector<std::set<int>> s(len + 1);
  for (int x = 0; x < m.size(); ++x) s[1].insert(x);
  for (int k = 2; k <= len; ++k)
    for (int x = 0; x < m.size(); ++x)
      for (int y : pre[x])
        if (s[k - 1].count(y)) {
          s[k].insert(x);
          break;
        }
  return s;
}

/// Number of anti-orbits with exactly len coordinates (any start).
inline long count_antiorbits(const PartialMap& m, int len) {
  auto pre = preimages(m);
  std::vector<long> cnt(m.size(), 1);  // length 1
  for (int k = 2; k <= len; ++k) {
    std::vector<long> next(m.size(), 0);
    for (int x = 0; x < m.size(); ++x)
      for (int y : pre[x]) next[x] += cnt[y];
    cnt = std::move(next);
  }
  long total = 0;
  for (long c : cnt) total += c;
  return total;
}

/// Explicit listing of all anti-orbits (x_0, ..., x_{len-1}); call only after
/// count_antiorbits confirmed the size is sane.
inline void enumerate_antiorbits(const PartialMap& m, int len,
                                 std::vector<std::vector<int>>& out) {
  auto pre = preimages(m);
  std::vector<int> seq;
  auto rec = [&](auto&& self, int x) -> void {
    seq.push_back(x);
    if (int(seq.size()) == len) {
      out.push_back(seq);
    } else {
      for (int y : pre[x]) self(self, y);
    }
    seq.pop_back();
  };
  for (int x = 0; x < m.size(); ++x) rec(rec, x);
}

/// All finite maximal anti-orbits (x_0..x_N) with N <= n_max: chain condition
/// plus last coordinate outside the range.
inline std::vector<std::vector<int>> brute_force_path_points(const PartialMap& m, int n_max) {
  auto pre = preimages(m);
  std::set<int> range_set = m.range();
  std::vector<std::vector<int>> out;
  std::vector<int> seq;
  auto rec = [&](auto&& self, int x) -> void {
    seq.push_back(x);
    if (!range_set.count(x)) out.push_back(seq);
    if (int(seq.size()) <= n_max)
      for (int y : pre[x]) self(self, y);
    seq.pop_back();
  };
  for (int x = 0; x < m.size(); ++x) rec(rec, x);
  return out;
}

}  // namespace stardyn::testing

#endif
