#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "stardyn/gen.hpp"
#include "stardyn/io.hpp"

using namespace stardyn;
using nlohmann::json;

#ifndef STARDYN_CLI_PATH
#define STARDYN_CLI_PATH ""
#endif
#ifndef STARDYN_FIXTURE_DIR
#define STARDYN_FIXTURE_DIR "fixtures"
#endif

namespace {

std::string fixture(const std::string& name) {
  return std::string(STARDYN_FIXTURE_DIR) + "/" + name;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  std::string out_path = "cli_out.tmp";
  std::string cmd = std::string(STARDYN_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  int status = std::system(cmd.c_str());
  if (output) {
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  std::remove(out_path.c_str());
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("scalar json round trip") {
  Scalar s(Rational(-7, 3), Rational(22, 5));
  CHECK(scalar_from_json(scalar_json(s)) == s);

  // huge values travel as strings, losslessly
  Rational big(Integer("123456789012345678901234567890"), Integer(7));
  Scalar huge(big, -big);
  json j = scalar_json(huge);
  CHECK(j[0].is_string());
  CHECK(scalar_from_json(j) == huge);

  CHECK_THROWS_AS(scalar_from_json(json::array({1, 0, 0, 1})), InputError);
  CHECK_THROWS_AS(scalar_from_json(json::array({1, 1})), InputError);
}

TEST_CASE("descriptor round trips") {
  gen::Rng rng(31337);
  for (int t = 0; t < 20; ++t) {
    SystemDescriptor d;
    d.kind = SystemDescriptor::Kind::partial_map;
    d.map = gen::random_partial_map(rng, 6);
    d.endo = induced_endomorphism(*d.map);
    SystemDescriptor back = parse_system(descriptor_json(d));
    REQUIRE(back.map.has_value());
    CHECK(*back.map == *d.map);
    CHECK(descriptor_json(back) == descriptor_json(d));
  }
  for (int t = 0; t < 20; ++t) {
    SystemDescriptor d;
    d.kind = SystemDescriptor::Kind::multimatrix;
    d.endo = gen::random_multimatrix_endo(rng, 3, 3);
    SystemDescriptor back = parse_system(descriptor_json(d));
    CHECK(back.endo.source() == d.endo.source());
    for (const AlgebraElement& b : matrix_unit_basis(d.endo.source()))
      CHECK(back.endo.apply(b) == d.endo.apply(b));
    CHECK(descriptor_json(back) == descriptor_json(d));
  }
}

TEST_CASE("malformed descriptors") {
  CHECK_THROWS_AS(parse_system(json{{"kind", "nonsense"}}), InputError);
  CHECK_THROWS_AS(parse_system(json::array()), InputError);
  // domain point missing from the point set
  json bad{{"kind", "partial_map"},
           {"points", json::array({"a"})},
           {"domain", json::array({"b"})},
           {"map", json{{"b", "a"}}}};
  CHECK_THROWS_AS(parse_system(bad), InputError);
  // mapped point not listed in the domain
  json bad2{{"kind", "partial_map"},
            {"points", json::array({"a", "b"})},
            {"domain", json::array({"a"})},
            {"map", json{{"a", "b"}, {"b", "a"}}}};
  CHECK_THROWS_AS(parse_system(bad2), InputError);
  // non-unitary conjugator
  json bad3{{"kind", "multimatrix"},
            {"blocks", json::array({1})},
            {"endo", json{{"targets", json::array({json{
                              {"sources", json::array({0})},
                              {"padding", 0},
                              {"unitary", json::array({json::array(
                                              {json::array({2, 1, 0, 1})})})}}})}}}};
  CHECK_THROWS_AS(parse_system(bad3), InputError);
  CHECK_THROWS_AS(load_system("no_such_file.json"), InputError);
}

TEST_CASE("bundled fixtures load and classify as documented") {
  SystemDescriptor shift = load_system(fixture("S_shift3.json"));
  REQUIRE(shift.map.has_value());
  CHECK(classify(shift.endo).complete);

  SystemDescriptor c3 = load_system(fixture("S_const3.json"));
  CHECK_FALSE(classify(c3.endo).complete);

  SystemDescriptor id = load_system(fixture("S_id.json"));
  CHECK(classify(id.endo).aut);

  SystemDescriptor rot = load_system(fixture("M_rot.json"));
  CHECK(rot.kind == SystemDescriptor::Kind::multimatrix);
  CHECK(rot.endo.source().block_dims() == std::vector<int>{2, 1});
}

TEST_CASE("dot exports carry the stable node naming") {
  SystemDescriptor d = load_system(fixture("S_merge.json"));
  NaturalExtension next(d.endo);
  std::string dot = bratteli_dot(next, 3);
  CHECK(dot.find("L0S0") != std::string::npos);
  CHECK(dot.find("L3S3") != std::string::npos);
  CHECK(dot.find("L2S2 -> L3S3") != std::string::npos);
  CHECK(dot.find("digraph tower") == 0);

  ExtendedSystem ext(*d.map);
  std::string sdot = spectrum_dot(ext, 3);
  CHECK(sdot.find("(0,1,2)") != std::string::npos);
  CHECK(sdot.find("cyc0@0") != std::string::npos);
}

TEST_CASE("cli end to end") {
  std::string out;

  CHECK(run_cli("classify " + fixture("S_shift3.json"), &out) == 0);
  CHECK(out.find("\"complete\": true") != std::string::npos);

  CHECK(run_cli("classify " + fixture("S_const3.json"), &out) == 0);
  CHECK(out.find("\"complete\": false") != std::string::npos);

  CHECK(run_cli("classify " + fixture("S_id.json"), &out) == 0);
  CHECK(out.find("\"auto\": true") != std::string::npos);

  CHECK(run_cli("extend " + fixture("S_merge.json") + " --levels 5", &out) == 0);
  CHECK(out.find("3,\n    4,\n    5,\n    6,\n    7,\n    8") != std::string::npos);

  CHECK(run_cli("extend " + fixture("S_const3.json") + " --levels 3", &out) == 0);
  CHECK(out.find("3,\n    5,\n    7,\n    9") != std::string::npos);

  CHECK(run_cli("spectrum " + fixture("S_merge.json") + " --depth 3 --dot spec_out.dot", &out) ==
        0);
  CHECK(out.find("\"count\": 5") != std::string::npos);
  {
    std::ifstream dot("spec_out.dot");
    REQUIRE(dot.good());
    std::stringstream ss;
    ss << dot.rdbuf();
    CHECK(ss.str().find("digraph extension") == 0);
  }
  std::remove("spec_out.dot");

  CHECK(run_cli("covrep " + fixture("S_shift3.json") + " --depth 5 --mode example13", &out) == 0);
  CHECK(out.find("\"expected_pattern\": true") != std::string::npos);

  CHECK(run_cli("covrep " + fixture("S_merge.json") + " --depth 5 --mode strict", &out) == 0);

  for (const char* f : {"S_id.json", "S_const3.json", "S_shift3.json", "S_merge.json",
                        "M_rot.json"}) {
    CHECK(run_cli("verify-all " + fixture(f) + " --depth 4", &out) == 0);
    CHECK(out.find("all checks passed") != std::string::npos);
  }

  // input errors exit with 2
  std::ofstream bad("bad_input.json");
  bad << "{ not json";
  bad.close();
  CHECK(run_cli("classify bad_input.json", &out) == 2);
  std::remove("bad_input.json");

  CHECK(run_cli("classify no_such_file.json", &out) == 2);
  CHECK(run_cli("spectrum " + fixture("M_rot.json") + " --depth 3", &out) == 2);
}

TEST_CASE("depth limit guard") {
  std::string out;
  std::string cmd = "STARDYN_DEPTH_LIMIT=3 " + std::string(STARDYN_CLI_PATH) + " spectrum " +
                    fixture("S_const3.json") + " --depth 6 > cli_guard.tmp 2>&1";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
  std::remove("cli_guard.tmp");
}
