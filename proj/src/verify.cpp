#include "stardyn/verify.hpp"

#include <sstream>

#include "stardyn/gen.hpp"
#include "stardyn/spectral.hpp"
#include "stardyn/unitize.hpp"

namespace stardyn {

void SuiteReport::add(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
}

bool SuiteReport::ok() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

bool operator==(const SuiteReport& a, const SuiteReport& b) {
  if (a.checks.size() != b.checks.size()) return false;
  for (std::size_t i = 0; i < a.checks.size(); ++i)
    if (a.checks[i].name != b.checks[i].name || a.checks[i].pass != b.checks[i].pass ||
        a.checks[i].detail != b.checks[i].detail)
      return false;
  return true;
}

namespace {

template <typename F>
void guarded(SuiteReport& rep, const std::string& name, F&& body) {
  try {
    body();
  } catch (const ContractViolation& e) {
    rep.add(name, false, e.what());
  } catch (const std::exception& e) {
    rep.add(name, false, std::string("error: ") + e.what());
  }
}

}  // namespace

SuiteReport verify_endo_system(const StarEndomorphism& phi, const VerifyOptions& opt) {
  SuiteReport rep;

  guarded(rep, "completeness criteria agree", [&] {
    CompletenessReport cr = completeness_report(phi);  // throws on disagreement
    std::ostringstream os;
    os << (cr.complete ? "complete" : "not complete");
    rep.add("completeness criteria agree", true, os.str());
    if (cr.complete) {
      AlgebraElement p = AlgebraElement::one(phi.source()) - cr.q.element();
      rep.add("witness p = transfer(1) = 1 - q", cr.witness_p && cr.witness_p->element() == p);
    }
  });

  guarded(rep, "canonical transfer is a non-degenerate transfer", [&] {
    LinearMap tau = canonical_nondegenerate_transfer(phi);
    rep.add("canonical transfer is a non-degenerate transfer",
            is_transfer(phi, tau) && is_nondegenerate(phi, tau));
  });

  NaturalExtension next(phi);
  guarded(rep, "tower shift identities", [&] {
    rep.add("tower shift identities", next.verify_tower(opt.tower_levels).all());
  });

  guarded(rep, "tower transfer axioms on the level basis", [&] {
    bool ok = true;
    TowerElement d1 = next.inject(next.unit_power(1));
    for (int n = 0; n <= opt.tower_levels && ok; ++n) {
      const auto& basis = next.level_basis(n);
      for (const TowerElement& x : basis) {
        TowerElement dx = next.ext_delta(x);
        TowerElement tx = next.ext_transfer(x);
        // (b,,3) and delta delta_* delta = delta
        if (!next.equal(next.ext_delta(tx), next.mul(next.mul(d1, x), d1))) ok = false;
        if (!next.equal(next.ext_delta(next.ext_transfer(dx)), dx)) ok = false;
        if (!ok) break;
        // (b,,2) over all pairs at this level
        for (const TowerElement& y : basis) {
          if (!next.equal(next.ext_transfer(next.mul(dx, y)), next.mul(x, next.ext_transfer(y)))) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
    }
    rep.add("tower transfer axioms on the level basis", ok);
  });

  guarded(rep, "extension restricts to the base endomorphism", [&] {
    bool ok = true;
    for (const AlgebraElement& b : matrix_unit_basis(phi.source()))
      if (!next.equal(next.ext_delta(next.inject(b)), next.inject(phi.apply(b)))) ok = false;
    rep.add("extension restricts to the base endomorphism", ok);
  });

  guarded(rep, "kernel of the extension is q B", [&] {
    bool ok = next.is_zero(next.ext_delta(next.inject(next.kernel_unit().element())));
    TowerElement q = next.inject(next.kernel_unit().element());
    for (int n = 0; n <= std::min(opt.tower_levels, 2) && ok; ++n)
      for (const TowerElement& x : next.level_basis(n)) {
        bool killed = next.is_zero(next.ext_delta(x));
        bool fixed = next.equal(next.mul(q, x), x);
        if (killed != fixed) {
          ok = false;
          break;
        }
      }
    rep.add("kernel of the extension is q B", ok);
  });

  guarded(rep, "extension is complete at every truncation", [&] {
    bool ok = true;
    for (int n = 1; n <= std::min(opt.tower_levels, 3); ++n)
      if (!next.truncation_complete(n)) ok = false;
    rep.add("extension is complete at every truncation", ok);
  });

  guarded(rep, "complete systems are fixed points", [&] {
    if (!classify(phi).complete) {
      rep.add("complete systems are fixed points", true, "not complete; vacuous");
      return;
    }
    bool ok = true;
    for (int n = 0; n <= opt.tower_levels; ++n) {
      if (next.level_dim(n) != phi.source().dim()) ok = false;
      if (n < opt.tower_levels && !next.level_embedding_bijective(n)) ok = false;
    }
    rep.add("complete systems are fixed points", ok);
  });

  guarded(rep, "normal form round trips", [&] {
    gen::Rng rng(opt.seed);
    bool ok = true;
    for (int t = 0; t < 5 && ok; ++t) {
      int n = std::uniform_int_distribution<int>(1, opt.tower_levels)(rng);
      std::vector<AlgebraElement> coeffs = gen::random_coefficients(rng, phi.source(), n);
      TowerElement x = next.from_transfer_sum(coeffs);
      auto via_tower = next.to_coordinates(x, n - 1);
      if (via_tower != next.normal_form_coefficients(coeffs)) ok = false;
      if (!next.equal(next.from_transfer_sum(via_tower), x)) ok = false;
    }
    rep.add("normal form round trips", ok);
  });

  return rep;
}

SuiteReport verify_partial_map_system(const PartialMap& m, const VerifyOptions& opt) {
  SuiteReport rep = verify_endo_system(induced_endomorphism(m), opt);

  guarded(rep, "duality table", [&] {
    (void)duality_report(m);  // throws on any broken biconditional
    rep.add("duality table", true);
  });

  guarded(rep, "extended space dualities", [&] {
    ExtendedSystem ext(m);
    ext.set_point_limit(opt.point_limit);
    rep.add("extended space dualities", ext.verify(opt.spectral_depth).all());
  });

  guarded(rep, "strict covariant representation", [&] {
    auto ctx = RepContext::strict(m, opt.rep_depth, opt.point_limit);
    CRReport cr = verify_cr(*ctx, {CRFlag::cr1, CRFlag::cr1_prime, CRFlag::cr1_doubleprime,
                                   CRFlag::cr2, CRFlag::cr3});
    std::ostringstream os;
    os << cr.certified_checks() << " certified checks";
    rep.add("strict covariant representation", cr.all_pass(), os.str());

    StructuralReport st = structural_checks(*ctx);
    rep.add("strict structural package",
            st.uu_below_p && st.uu_equals_p && st.p_in_commutant && st.uu_in_commutant &&
                st.kernel_match && st.iso_pair && st.t1_iso && st.t2_epi && st.ideal_match &&
                st.unitized_rep_ok);

    gen::Rng rng(opt.seed + 7);
    std::vector<std::vector<AlgebraElement>> lists;
    for (int t = 0; t < 5; ++t)
      lists.push_back(gen::random_coefficients(
          rng, ctx->endo().source(),
          std::uniform_int_distribution<int>(1, 3)(rng)));
    rep.add("sum correspondence", correspondence_check(*ctx, lists).pass());
  });

  guarded(rep, "direct-sum representation pattern", [&] {
    if (!m.injective()) {
      rep.add("direct-sum representation pattern", true, "not injective; vacuous");
      return;
    }
    auto ctx = RepContext::tower_of_copies(m, opt.rep_depth);
    CRReport cr = verify_cr(*ctx, {CRFlag::cr1, CRFlag::cr1_prime, CRFlag::cr1_doubleprime,
                                   CRFlag::cr2});
    bool pattern = cr.relation(CRFlag::cr1).pass() && cr.relation(CRFlag::cr1_prime).pass() &&
                   cr.relation(CRFlag::cr2).pass();
    bool cr1pp_expected =
        m.range().empty() ? cr.relation(CRFlag::cr1_doubleprime).pass()
                          : !cr.relation(CRFlag::cr1_doubleprime).pass();
    StructuralReport st = structural_checks(*ctx);
    rep.add("direct-sum representation pattern",
            pattern && cr1pp_expected && st.uu_below_p && st.gap_on_copy0 &&
                st.compressed_algebra_faithful && st.kernel_match);
  });

  return rep;
}

std::vector<SuiteReport> verify_endo_batch(const std::vector<StarEndomorphism>& systems,
                                           const VerifyOptions& opt, par::Mode mode) {
  std::vector<SuiteReport> out(systems.size());
  par::for_each_index(systems.size(), mode,
                      [&](std::size_t i) { out[i] = verify_endo_system(systems[i], opt); });
  return out;
}

std::vector<SuiteReport> verify_map_batch(const std::vector<PartialMap>& maps,
                                          const VerifyOptions& opt, par::Mode mode) {
  std::vector<SuiteReport> out(maps.size());
  par::for_each_index(maps.size(), mode,
                      [&](std::size_t i) { out[i] = verify_partial_map_system(maps[i], opt); });
  return out;
}

}  // namespace stardyn
