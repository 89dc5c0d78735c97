#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "stardyn/covrep.hpp"
#include "stardyn/io.hpp"
#include "stardyn/verify.hpp"

using namespace stardyn;
using nlohmann::json;

namespace {

long depth_limit_from_env() {
  const char* v = std::getenv("STARDYN_DEPTH_LIMIT");
  if (!v) return 10000;
  char* end = nullptr;
  long parsed = std::strtol(v, &end, 10);
  if (end == v || parsed <= 0) throw InputError("STARDYN_DEPTH_LIMIT must be a positive integer");
  return parsed;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

json classification_json(const StarEndomorphism& endo) {
  EndoClassification cls = classify(endo);
  json j;
  j["mono"] = cls.mono;
  j["epi"] = cls.epi;
  j["auto"] = cls.aut;
  j["unital"] = cls.unital;
  j["unital_kernel"] = cls.unital_kernel;
  j["hereditary_range"] = cls.hereditary_range;
  j["complete"] = cls.complete;
  return j;
}

int cmd_classify(const std::string& file) {
  SystemDescriptor d = load_system(file);
  json out;
  out["kind"] = d.kind == SystemDescriptor::Kind::partial_map ? "partial_map" : "multimatrix";
  out["classification"] = classification_json(d.endo);
  out["q"] = element_json(kernel_unit(d.endo).element());
  out["delta_one"] = element_json(power_of_unit(d.endo, 1).element());

  CompletenessReport rep = completeness_report(d.endo);
  json comp;
  comp["i"] = rep.item_i;
  comp["ii"] = rep.item_ii;
  comp["iii"] = rep.item_iii;
  comp["iv"] = rep.item_iv;
  if (rep.witness_p) comp["p"] = element_json(rep.witness_p->element());
  out["completeness"] = std::move(comp);

  if (d.map) {
    json rows = json::array();
    for (const DualityRow& r : duality_report(*d.map)) {
      json row;
      row["property"] = r.property;
      row["map_side"] = r.map_side;
      row["algebra_side"] = r.algebra_side;
      rows.push_back(std::move(row));
    }
    out["duality"] = std::move(rows);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_extend(const std::string& file, int levels, const std::string& dot_path) {
  SystemDescriptor d = load_system(file);
  NaturalExtension next(d.endo);
  json out;
  json dims = json::array();
  for (int n = 0; n <= levels; ++n) dims.push_back(next.level_dim(n));
  out["level_dims"] = std::move(dims);
  if (levels >= 1) {
    TowerReport tower = next.verify_tower(levels);
    out["tower"]["shift_transfer_identity"] = tower.shift_transfer_identity;
    out["tower"]["shift_corner_identity"] = tower.shift_corner_identity;
    out["tower"]["left_diagram_commutes"] = tower.left_diagram_commutes;
    out["tower"]["right_diagram_commutes"] = tower.right_diagram_commutes;
    json trunc = json::array();
    for (int n = 1; n <= std::min(levels, 4); ++n) trunc.push_back(next.truncation_complete(n));
    out["truncation_complete"] = std::move(trunc);
  }
  if (!dot_path.empty()) write_file(dot_path, bratteli_dot(next, levels));
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_spectrum(const std::string& file, int depth, const std::string& dot_path) {
  SystemDescriptor d = load_system(file);
  if (!d.map) throw InputError("spectrum needs a partial_map descriptor");
  ExtendedSystem ext(*d.map);
  ext.set_point_limit(depth_limit_from_env());
  json out;
  json pts = json::array();
  for (const ExtPoint& p : ext.enumerate_points(depth)) {
    json pj;
    pj["label"] = ext.point_label(p);
    pj["kind"] = p.is_path() ? "path" : "cycle";
    if (p.is_path()) pj["length"] = p.path_length();
    pts.push_back(std::move(pj));
  }
  out["points"] = std::move(pts);
  out["count"] = out["points"].size();
  json dims = json::array();
  for (int n = 0; n <= depth; ++n) dims.push_back(ext.level_spectrum(n).size());
  out["level_sizes"] = std::move(dims);
  if (!dot_path.empty()) write_file(dot_path, spectrum_dot(ext, depth));
  std::cout << out.dump(2) << "\n";
  return 0;
}

json relation_json(const RelationReport& r) {
  json j;
  j["relation"] = r.name;
  j["pass"] = r.pass();
  j["checks"] = r.checks;
  j["excluded"] = r.excluded;
  return j;
}

int cmd_covrep(const std::string& file, int depth, const std::string& mode) {
  SystemDescriptor d = load_system(file);
  if (!d.map) throw InputError("covrep needs a partial_map descriptor");
  long limit = depth_limit_from_env();
  json out;
  out["mode"] = mode;
  const std::set<CRFlag> all{CRFlag::cr1, CRFlag::cr1_prime, CRFlag::cr1_doubleprime, CRFlag::cr2,
                             CRFlag::cr3};
  if (mode == "strict") {
    auto ctx = RepContext::strict(*d.map, depth, limit);
    CRReport rep = verify_cr(*ctx, all);
    json rels = json::array();
    for (const auto& r : rep.relations) rels.push_back(relation_json(r));
    out["relations"] = std::move(rels);
    out["certified_checks"] = rep.certified_checks();
    out["saturated"] = rep.saturated;
    out["basis_size"] = ctx->basis().size();
    std::cout << out.dump(2) << "\n";
    return rep.all_pass() ? 0 : 1;
  }
  if (mode == "example13") {
    auto ctx = RepContext::tower_of_copies(*d.map, depth);
    CRReport rep = verify_cr(*ctx, all);
    json rels = json::array();
    for (const auto& r : rep.relations) rels.push_back(relation_json(r));
    out["relations"] = std::move(rels);
    StructuralReport st = structural_checks(*ctx);
    out["isometry_defect_on_copy0"] = st.gap_on_copy0;
    bool expected_pattern = rep.relation(CRFlag::cr1).pass() &&
                            rep.relation(CRFlag::cr1_prime).pass() &&
                            rep.relation(CRFlag::cr2).pass();
    bool range_empty = d.map->range().empty();
    bool cr1pp = rep.relation(CRFlag::cr1_doubleprime).pass();
    expected_pattern = expected_pattern && (range_empty ? cr1pp : !cr1pp) && st.uu_below_p &&
                       st.gap_on_copy0;
    out["expected_pattern"] = expected_pattern;
    std::cout << out.dump(2) << "\n";
    return expected_pattern ? 0 : 1;
  }
  throw InputError("unknown covrep mode: " + mode);
}

int cmd_verify_all(const std::string& file, int depth) {
  SystemDescriptor d = load_system(file);
  VerifyOptions opt;
  opt.tower_levels = std::min(depth, 4);
  opt.spectral_depth = depth;
  opt.rep_depth = depth;
  opt.point_limit = depth_limit_from_env();
  SuiteReport rep = d.map ? verify_partial_map_system(*d.map, opt)
                          : verify_endo_system(d.endo, opt);
  bool ok = rep.ok();
  for (const CheckResult& c : rep.checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
  }
  std::cout << (ok ? "all checks passed" : "checks FAILED") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for finite-dimensional dynamical systems and their extensions"};
  app.require_subcommand(1);

  std::string file, dot_path, mode = "strict";
  int levels = 4, depth = 4;

  auto* classify_cmd = app.add_subcommand("classify", "classify a system and its transfer data");
  classify_cmd->add_option("file", file, "system descriptor (JSON)")->required();

  auto* extend_cmd = app.add_subcommand("extend", "build the extension tower");
  extend_cmd->add_option("file", file)->required();
  extend_cmd->add_option("--levels", levels, "tower levels")->check(CLI::NonNegativeNumber);
  extend_cmd->add_option("--dot", dot_path, "write the tower diagram here");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "enumerate the extended space");
  spectrum_cmd->add_option("file", file)->required();
  spectrum_cmd->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
  spectrum_cmd->add_option("--dot", dot_path, "write the point graph here");

  auto* covrep_cmd = app.add_subcommand("covrep", "verify covariant representations");
  covrep_cmd->add_option("file", file)->required();
  covrep_cmd->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
  covrep_cmd->add_option("--mode", mode)->check(CLI::IsMember({"strict", "example13"}));

  auto* verify_cmd = app.add_subcommand("verify-all", "run every invariant suite");
  verify_cmd->add_option("file", file)->required();
  verify_cmd->add_option("--depth", depth)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
    if (classify_cmd->parsed()) return cmd_classify(file);
    if (extend_cmd->parsed()) return cmd_extend(file, levels, dot_path);
    if (spectrum_cmd->parsed()) return cmd_spectrum(file, depth, dot_path);
    if (covrep_cmd->parsed()) return cmd_covrep(file, depth, mode);
    if (verify_cmd->parsed()) return cmd_verify_all(file, depth);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ContractViolation& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
