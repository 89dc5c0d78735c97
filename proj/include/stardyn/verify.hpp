#ifndef STARDYN_VERIFY_HPP
#define STARDYN_VERIFY_HPP

#include <string>
#include <vector>

#include "stardyn/covrep.hpp"
#include "stardyn/natext.hpp"
#include "stardyn/parallel.hpp"
#include "stardyn/pdsys.hpp"
#include "stardyn/transfer.hpp"

namespace stardyn {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  void add(std::string name, bool pass, std::string detail = "");
  bool ok() const;
  friend bool operator==(const SuiteReport& a, const SuiteReport& b);
};

struct VerifyOptions {
  int tower_levels = 4;   // identities checked on the level basis up to here
  int spectral_depth = 4;
  int rep_depth = 4;
  long point_limit = 10000;
  unsigned seed = 1;      // for the handful of randomised sub-checks
};

/// Invariant suite over an arbitrary finite-dimensional system: completeness
/// criteria, canonical transfer axioms, tower identities, kernel stability and
/// normal forms.
SuiteReport verify_endo_system(const StarEndomorphism& phi, const VerifyOptions& opt);

/// Everything above plus the duality table, extended-space checks and the
/// covariant representation suite (commutative systems).
SuiteReport verify_partial_map_system(const PartialMap& m, const VerifyOptions& opt);

/// Batch drivers: independent systems verified under the chosen execution
/// mode; the serial path is the reference for the parallel one.
std::vector<SuiteReport> verify_endo_batch(const std::vector<StarEndomorphism>& systems,
                                           const VerifyOptions& opt, par::Mode mode);
std::vector<SuiteReport> verify_map_batch(const std::vector<PartialMap>& maps,
                                          const VerifyOptions& opt, par::Mode mode);

}  // namespace stardyn

#endif
