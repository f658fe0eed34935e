#ifndef DISKOP_SCENE_HPP
#define DISKOP_SCENE_HPP

#include "diskop/tensor.hpp"

#include <map>

namespace diskop {

inline constexpr const char* scene_format = "diskop-scene/1";

const char* mode_name(NumericMode mode);
NumericMode parse_mode(const std::string& name);

template <class Scalar>
struct SceneSpace {
  SpacePtr<Scalar> space;
  std::optional<std::pair<std::string, std::string>> product;  // factor names for V x W
};

template <class Scalar>
struct SceneDomain {
  std::string space;
  ProductBall<Scalar> ball;
};

template <class Scalar>
struct SceneConfig {
  std::string domain;
  Config<Scalar> config;
};

template <class Scalar>
struct SceneTree {
  std::string space, v_domain, w_domain;
  SuperTree<Scalar> tree;
};

/// Named spaces, domains, configurations and trees. Maps keep names sorted,
/// which is also the serialized order.
template <class Scalar>
struct Scene {
  NumericMode mode = scalar_traits<Scalar>::mode;
  Settings<Scalar> settings;
  Tolerance<Scalar> tolerance;
  std::map<std::string, SceneSpace<Scalar>> spaces;
  std::map<std::string, SceneDomain<Scalar>> domains;
  std::map<std::string, SceneConfig<Scalar>> configs;
  std::map<std::string, SceneTree<Scalar>> trees;

  const Config<Scalar>& config(const std::string& name) const;
  const ProductBall<Scalar>& domain(const std::string& name) const;
  const SuperTree<Scalar>& tree(const std::string& name) const;
  SpacePtr<Scalar> space(const std::string& name) const;
};

/// The mode a document declares ("numeric"), Exact if absent.
NumericMode declared_mode(const std::string& text);

/// Parses and validates a scene. Exact numbers are "p/q" strings (integers and
/// decimals are read exactly); floats may be numbers or strings. Errors carry
/// the JSON path. `tolerance` overrides the document's float tolerance.
template <class Scalar>
Scene<Scalar> parse_scene(const std::string& text, std::optional<Scalar> tolerance = std::nullopt);

template <class Scalar>
Scene<Scalar> load_scene(const std::string& path, std::optional<Scalar> tolerance = std::nullopt);

/// Canonical form: sorted keys, two-space indent, exact numbers as strings,
/// orthogonal parts always written out.
template <class Scalar>
std::string serialize_scene(const Scene<Scalar>& scene);

/// Scene holding the given configurations and trees together with their
/// spaces (S1, S2, ...) and domains (D1, D2, ...).
template <class Scalar>
Scene<Scalar> scene_fragment(const std::vector<std::pair<std::string, Config<Scalar>>>& configs,
                             const std::vector<std::pair<std::string, SuperTree<Scalar>>>& trees = {});

/// JSON text of one configuration / map, in the scene encoding.
template <class Scalar>
std::string config_json(const Config<Scalar>& x);

template <class Scalar>
std::string map_json(const DilationMap<Scalar>& f);

template <class Scalar>
std::string scalar_json(const Scalar& v);

struct RenderOptions {
  std::pair<int, int> axes{0, 1};
  bool enlarged = false;  // dashed circles of the separation-scaled disks
  std::string domain;     // defaults to the first configuration's domain, else the first domain
};

/// Deterministic SVG of the projection of each named configuration onto two
/// axes of one coarse block of its space.
template <class Scalar>
std::string render_svg(const Scene<Scalar>& scene, const std::vector<std::string>& configs,
                       const RenderOptions& options = {});

}  // namespace diskop

#endif  // DISKOP_SCENE_HPP
