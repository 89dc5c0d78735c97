#include "stardyn/io.hpp"

#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace stardyn {

namespace {

nlohmann::json integer_json(const Integer& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() &&
      n <= std::numeric_limits<std::int64_t>::max())
    return nlohmann::json(std::int64_t(n));
  return nlohmann::json(n.str());
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw InputError("expected an integer or a decimal string");
}

}  // namespace

nlohmann::json scalar_json(const Scalar& s) {
  return nlohmann::json::array({integer_json(numerator(s.re())), integer_json(denominator(s.re())),
                                integer_json(numerator(s.im())),
                                integer_json(denominator(s.im()))});
}

Scalar scalar_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4)
    throw InputError("scalar must be a [re_num, re_den, im_num, im_den] quadruple");
  Integer rn = integer_from_json(j[0]), rd = integer_from_json(j[1]);
  Integer in = integer_from_json(j[2]), id = integer_from_json(j[3]);
  if (rd == 0 || id == 0) throw InputError("scalar denominator is zero");
  return Scalar(Rational(rn, rd), Rational(in, id));
}

nlohmann::json element_json(const AlgebraElement& a) {
  nlohmann::json blocks = nlohmann::json::array();
  for (int j = 0; j < a.algebra().block_count(); ++j) {
    int n = a.algebra().block_dims()[j];
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < n; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < n; ++c) row.push_back(scalar_json(a.block(j).at(r, c)));
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  return blocks;
}

namespace {

Mat matrix_from_json(const nlohmann::json& j, int n) {
  if (!j.is_array() || int(j.size()) != n) throw InputError("unitary row count mismatch");
  Mat m(n, n);
  for (int r = 0; r < n; ++r) {
    if (!j[r].is_array() || int(j[r].size()) != n)
      throw InputError("unitary column count mismatch");
    for (int c = 0; c < n; ++c) m.at(r, c) = scalar_from_json(j[r][c]);
  }
  return m;
}

SystemDescriptor parse_partial_map(const nlohmann::json& j) {
  if (!j.contains("points") || !j["points"].is_array())
    throw InputError("partial_map needs a points array");
  std::vector<std::string> names;
  std::map<std::string, int> index;
  for (const auto& p : j["points"]) {
    if (!p.is_string()) throw InputError("point names must be strings");
    std::string name = p.get<std::string>();
    if (index.count(name)) throw InputError("duplicate point name: " + name);
    index[name] = int(names.size());
    names.push_back(std::move(name));
  }
  std::vector<std::optional<int>> images(names.size());
  if (!j.contains("domain") || !j["domain"].is_array())
    throw InputError("partial_map needs a domain array");
  if (!j.contains("map") || !j["map"].is_object())
    throw InputError("partial_map needs a map object");
  for (const auto& d : j["domain"]) {
    std::string name = d.get<std::string>();
    auto it = index.find(name);
    if (it == index.end()) throw InputError("domain point not in the point set: " + name);
    if (!j["map"].contains(name)) throw InputError("domain point without image: " + name);
    std::string target = j["map"][name].get<std::string>();
    auto jt = index.find(target);
    if (jt == index.end()) throw InputError("image point not in the point set: " + target);
    images[it->second] = jt->second;
  }
  for (const auto& [key, value] : j["map"].items()) {
    auto it = index.find(key);
    if (it == index.end()) throw InputError("mapped point not in the point set: " + key);
    if (!images[it->second].has_value())
      throw InputError("mapped point not listed in the domain: " + key);
  }
  SystemDescriptor d;
  d.kind = SystemDescriptor::Kind::partial_map;
  d.map = PartialMap(std::move(names), std::move(images));
  d.endo = induced_endomorphism(*d.map);
  return d;
}

SystemDescriptor parse_multimatrix(const nlohmann::json& j) {
  if (!j.contains("blocks") || !j["blocks"].is_array())
    throw InputError("multimatrix needs a blocks array");
  std::vector<int> dims;
  for (const auto& b : j["blocks"]) {
    if (!b.is_number_integer()) throw InputError("block dimensions must be integers");
    dims.push_back(b.get<int>());
  }
  MultiMatrixAlgebra a(dims);
  if (!j.contains("endo") || !j["endo"].is_object() || !j["endo"].contains("targets"))
    throw InputError("multimatrix needs endo.targets");
  const auto& targets_json = j["endo"]["targets"];
  if (!targets_json.is_array() || int(targets_json.size()) != a.block_count())
    throw InputError("endo.targets must list one entry per block");
  std::vector<EndoTargetBlock> targets;
  for (int t = 0; t < a.block_count(); ++t) {
    const auto& tj = targets_json[t];
    EndoTargetBlock tb;
    if (!tj.contains("sources") || !tj["sources"].is_array())
      throw InputError("target needs a sources array");
    for (const auto& s : tj["sources"]) tb.sources.push_back(s.get<int>());
    tb.padding = tj.value("padding", 0);
    if (tj.contains("unitary"))
      tb.unitary = matrix_from_json(tj["unitary"], dims[t]);
    else
      tb.unitary = Mat::identity(dims[t]);
    targets.push_back(std::move(tb));
  }
  SystemDescriptor d;
  d.kind = SystemDescriptor::Kind::multimatrix;
  d.endo = StarEndomorphism(a, a, std::move(targets));
  return d;
}

}  // namespace

SystemDescriptor parse_system(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InputError("descriptor needs a string 'kind'");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "partial_map") return parse_partial_map(j);
  if (kind == "multimatrix") return parse_multimatrix(j);
  throw InputError("unknown descriptor kind: " + kind);
}

SystemDescriptor load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_system(j);
}

nlohmann::json descriptor_json(const SystemDescriptor& d) {
  nlohmann::json j;
  if (d.kind == SystemDescriptor::Kind::partial_map) {
    j["kind"] = "partial_map";
    nlohmann::json points = nlohmann::json::array();
    nlohmann::json domain = nlohmann::json::array();
    nlohmann::json map = nlohmann::json::object();
    for (int x = 0; x < d.map->size(); ++x) {
      points.push_back(d.map->name(x));
      if (d.map->in_domain(x)) {
        domain.push_back(d.map->name(x));
        map[d.map->name(x)] = d.map->name(d.map->image(x));
      }
    }
    j["points"] = std::move(points);
    j["domain"] = std::move(domain);
    j["map"] = std::move(map);
    return j;
  }
  j["kind"] = "multimatrix";
  j["blocks"] = d.endo.source().block_dims();
  nlohmann::json targets = nlohmann::json::array();
  for (const EndoTargetBlock& t : d.endo.targets()) {
    nlohmann::json tj;
    tj["sources"] = t.sources;
    tj["padding"] = t.padding;
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < t.unitary.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < t.unitary.cols(); ++c) row.push_back(scalar_json(t.unitary.at(r, c)));
      rows.push_back(std::move(row));
    }
    tj["unitary"] = std::move(rows);
    targets.push_back(std::move(tj));
  }
  j["endo"]["targets"] = std::move(targets);
  return j;
}

std::string bratteli_dot(const NaturalExtension& next, int levels) {
  std::ostringstream os;
  os << "digraph tower {\n  rankdir=TB;\n  node [shape=box];\n";
  for (int n = 0; n <= levels; ++n) {
    LevelAlgebra la = next.level_algebra(n);
    os << "  { rank=same;";
    for (int k = 0; k <= n; ++k)
      os << " L" << n << "S" << k << " [label=\"dim " << la.summand_dims[k] << "\"];";
    os << " }\n";
  }
  for (int n = 0; n < levels; ++n) {
    LevelAlgebra la = next.level_algebra(n);
    LevelAlgebra lb = next.level_algebra(n + 1);
    for (int k = 0; k < n; ++k)
      os << "  L" << n << "S" << k << " -> L" << n + 1 << "S" << k << " [label=\"id "
         << la.summand_dims[k] << "\"];\n";
    // the last summand splits through q and through the endomorphism
    os << "  L" << n << "S" << n << " -> L" << n + 1 << "S" << n << " [label=\"q "
       << lb.summand_dims[n] << "\"];\n";
    os << "  L" << n << "S" << n << " -> L" << n + 1 << "S" << n + 1 << " [label=\"d "
       << la.summand_dims[n] - lb.summand_dims[n] << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string spectrum_dot(const ExtendedSystem& ext, int depth) {
  std::ostringstream os;
  os << "digraph extension {\n  node [shape=ellipse];\n";
  std::vector<ExtPoint> points = ext.enumerate_points(depth);
  std::map<ExtPoint, int> index;
  for (int i = 0; i < int(points.size()); ++i) {
    index[points[i]] = i;
    os << "  P" << i << " [label=\"" << ext.point_label(points[i]) << "\"];\n";
  }
  for (int i = 0; i < int(points.size()); ++i) {
    if (!ext.in_domain_tilde(points[i])) continue;
    ExtPoint target = ext.alpha_tilde(points[i]);
    auto it = index.find(target);
    if (it != index.end()) os << "  P" << i << " -> P" << it->second << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace stardyn
