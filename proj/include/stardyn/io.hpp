#ifndef STARDYN_IO_HPP
#define STARDYN_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "stardyn/natext.hpp"
#include "stardyn/pdsys.hpp"
#include "stardyn/spectral.hpp"

namespace stardyn {

/// A system loaded from disk: either a partial map (commutative) or a raw
/// multi-matrix endomorphism.  The induced endomorphism is available either
/// way.
struct SystemDescriptor {
  enum class Kind { partial_map, multimatrix };
  Kind kind = Kind::multimatrix;
  std::optional<PartialMap> map;
  StarEndomorphism endo;
};

/// Scalars travel as [re_num, re_den, im_num, im_den]; entries are JSON
/// integers when they fit and decimal strings otherwise, so nothing is ever
/// rounded.
nlohmann::json scalar_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j);

nlohmann::json element_json(const AlgebraElement& a);

SystemDescriptor parse_system(const nlohmann::json& j);
SystemDescriptor load_system(const std::string& path);
nlohmann::json descriptor_json(const SystemDescriptor& d);

/// Layered diagram of the extension tower: one node per summand per level
/// (named L{level}S{slot}), edges labelled by the rank of the component map.
std::string bratteli_dot(const NaturalExtension& next, int levels);

/// The extended space truncation: points as nodes, the extended map as edges.
std::string spectrum_dot(const ExtendedSystem& ext, int depth);

}  // namespace stardyn

#endif
