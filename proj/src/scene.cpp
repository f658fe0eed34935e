#include "diskop/scene.hpp"

#include "diskop/error.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace diskop {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw DomainError(path + ": " + what); }

const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing '" + key + "'");
  return *it;
}

const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

template <class Scalar>
Scalar scalar(const json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_scalar<Scalar>(j.get<std::string>());
    if (j.is_number_integer()) return Scalar(j.get<long>());
    // Floats in an exact scene are read through their shortest decimal form.
    if (j.is_number_float()) {
      if constexpr (is_exact_v<Scalar>) return parse_scalar<Scalar>(format_scalar(j.get<double>()));
      else return j.get<double>();
    }
  } catch (const UsageError& e) {
    fail(path, e.what());
  }
  fail(path, "expected a number or a \"p/q\" string");
}

template <class Scalar>
json write(const Scalar& v) {
  if constexpr (is_exact_v<Scalar>) return format_scalar(v);
  else return v;
}

template <class Scalar>
std::vector<Scalar> scalars(const json& j, const std::string& path) {
  std::vector<Scalar> out;
  for (std::size_t k = 0; k < array_at(j, path).size(); ++k) out.push_back(scalar<Scalar>(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

template <class Scalar>
Vec<Scalar> vector_of(const json& j, const std::string& path, int dim) {
  const auto v = scalars<Scalar>(j, path);
  if (static_cast<int>(v.size()) != dim) fail(path, "expected " + std::to_string(dim) + " entries");
  Vec<Scalar> out(dim);
  for (int k = 0; k < dim; ++k) out(k) = v[k];
  return out;
}

template <class Scalar>
Mat<Scalar> matrix_of(const json& j, const std::string& path, int dim) {
  if (array_at(j, path).size() != static_cast<std::size_t>(dim)) fail(path, "expected " + std::to_string(dim) + " rows");
  Mat<Scalar> m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto row = vector_of<Scalar>(j[r], path + "[" + std::to_string(r) + "]", dim);
    for (int c = 0; c < dim; ++c) m(r, c) = row(c);
  }
  return m;
}

template <class Scalar>
json write_vec(const Vec<Scalar>& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(write(v(k)));
  return out;
}

template <class Scalar>
json write_mat(const Mat<Scalar>& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(write_vec<Scalar>(m.row(r).transpose()));
  return out;
}

std::vector<AxisList> axis_lists(const json& j, const std::string& path) {
  std::vector<AxisList> out;
  for (std::size_t k = 0; k < array_at(j, path).size(); ++k) {
    AxisList axes;
    const auto p = path + "[" + std::to_string(k) + "]";
    for (std::size_t a = 0; a < array_at(j[k], p).size(); ++a) axes.push_back(integer(j[k][a], p));
    out.push_back(axes);
  }
  return out;
}

BlocksPtr read_blocks(const json& j, const std::string& path) {
  const int d = integer(member(j, "dimension", path), path + ".dimension");
  if (!j.contains("coarse")) return BlockStructure::spherical(d);
  const auto coarse = axis_lists(j["coarse"], path + ".coarse");
  const auto fine = j.contains("fine") ? axis_lists(j["fine"], path + ".fine") : coarse;
  try {
    return std::make_shared<const BlockStructure>(d, coarse, fine);
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

json write_blocks(const BlockStructure& b) {
  return json{{"dimension", b.dimension()}, {"coarse", b.coarse_blocks()}, {"fine", b.fine_blocks()}};
}

template <class Scalar>
DilationMap<Scalar> read_map(const json& j, const std::string& path, const BlocksPtr& blocks, const Tolerance<Scalar>& tol) {
  const int d = blocks->dimension();
  DilationMap<Scalar> f;
  f.blocks = blocks;
  f.scales = scalars<Scalar>(member(j, "scales", path), path + ".scales");
  f.translation = vector_of<Scalar>(member(j, "translation", path), path + ".translation", d);
  f.ortho = j.contains("ortho") ? matrix_of<Scalar>(j["ortho"], path + ".ortho", d) : Mat<Scalar>::Identity(d, d);
  const auto problems = map_violations(f, tol);
  if (!problems.empty()) fail(path + (problems.front().find("orthogonal") != std::string::npos ? ".ortho" : ""), problems.front());
  return f;
}

template <class Scalar>
json write_map(const DilationMap<Scalar>& f) {
  json scales = json::array();
  for (const auto& s : f.scales) scales.push_back(write(s));
  return json{{"ortho", write_mat(f.ortho)}, {"scales", scales}, {"translation", write_vec(f.translation)}};
}

template <class Scalar>
Config<Scalar> read_maps(const json& j, const std::string& path, const SpacePtr<Scalar>& space,
                         const ProductBall<Scalar>& domain) {
  std::vector<DilationMap<Scalar>> maps;
  for (std::size_t k = 0; k < array_at(j, path).size(); ++k)
    maps.push_back(read_map(j[k], path + "[" + std::to_string(k) + "]", space->blocks, space->tol));
  return make_config(space, domain, std::move(maps));
}

template <class Scalar>
json write_maps(const Config<Scalar>& x) {
  json out = json::array();
  for (const auto& f : x.maps) out.push_back(write_map(f));
  return out;
}

template <class Scalar>
GroupRep<Scalar> read_group(const json& j, const std::string& path, const BlockStructure& blocks,
                            const Tolerance<Scalar>& tol) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < array_at(member(j, "labels", path), path + ".labels").size(); ++k)
    labels.push_back(text(j["labels"][k], path + ".labels"));
  std::vector<std::vector<int>> table;
  for (std::size_t r = 0; r < array_at(member(j, "table", path), path + ".table").size(); ++r) {
    std::vector<int> row;
    for (const auto& v : array_at(j["table"][r], path + ".table")) row.push_back(integer(v, path + ".table"));
    table.push_back(row);
  }
  std::vector<Mat<Scalar>> mats;
  for (std::size_t k = 0; k < array_at(member(j, "matrices", path), path + ".matrices").size(); ++k)
    mats.push_back(matrix_of<Scalar>(j["matrices"][k], path + ".matrices[" + std::to_string(k) + "]", blocks.dimension()));
  try {
    return make_group<Scalar>(blocks, labels, table, mats, tol);
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

template <class Scalar>
json write_group(const GroupRep<Scalar>& g) {
  json mats = json::array();
  for (const auto& m : g.matrices) mats.push_back(write_mat(m));
  return json{{"labels", g.labels}, {"table", g.table}, {"matrices", mats}};
}

template <class Scalar>
const SceneDomain<Scalar>& find_domain(const Scene<Scalar>& s, const std::string& name, const std::string& path) {
  auto it = s.domains.find(name);
  if (it == s.domains.end()) fail(path, "unknown domain '" + name + "'");
  return it->second;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  return s == "-0.000000" ? "0.000000" : s;
}

}  // namespace

const char* mode_name(NumericMode mode) { return mode == NumericMode::Exact ? "exact" : "float"; }

NumericMode parse_mode(const std::string& name) {
  if (name == "exact") return NumericMode::Exact;
  if (name == "float") return NumericMode::Float;
  throw UsageError("numeric mode must be 'exact' or 'float', got '" + name + "'");
}

NumericMode declared_mode(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("scene is not valid JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("numeric") && j["numeric"].is_string()) return parse_mode(j["numeric"].get<std::string>());
  return NumericMode::Exact;
}

template <class Scalar>
const Config<Scalar>& Scene<Scalar>::config(const std::string& name) const {
  auto it = configs.find(name);
  if (it == configs.end()) throw DomainError("unknown configuration '" + name + "'");
  return it->second.config;
}

template <class Scalar>
const ProductBall<Scalar>& Scene<Scalar>::domain(const std::string& name) const {
  auto it = domains.find(name);
  if (it == domains.end()) throw DomainError("unknown domain '" + name + "'");
  return it->second.ball;
}

template <class Scalar>
const SuperTree<Scalar>& Scene<Scalar>::tree(const std::string& name) const {
  auto it = trees.find(name);
  if (it == trees.end()) throw DomainError("unknown tree '" + name + "'");
  return it->second.tree;
}

template <class Scalar>
SpacePtr<Scalar> Scene<Scalar>::space(const std::string& name) const {
  auto it = spaces.find(name);
  if (it == spaces.end()) throw DomainError("unknown space '" + name + "'");
  return it->second.space;
}

template <class Scalar>
Scene<Scalar> parse_scene(const std::string& source, std::optional<Scalar> tolerance) {
  json j;
  try {
    j = json::parse(source);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("scene is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("$", "expected an object");
  if (text(member(j, "format", "$"), "$.format") != scene_format)
    fail("$.format", std::string("expected \"") + scene_format + "\"");
  Scene<Scalar> s;
  if (j.contains("numeric")) {
    try {
      s.mode = parse_mode(text(j["numeric"], "$.numeric"));
    } catch (const UsageError& e) {
      fail("$.numeric", e.what());
    }
  }
  if (j.contains("settings")) {
    const auto& st = j["settings"];
    if (st.contains("separation")) s.settings.separation = scalar<Scalar>(st["separation"], "$.settings.separation");
    if (st.contains("shrink")) s.settings.shrink = scalar<Scalar>(st["shrink"], "$.settings.shrink");
    if (st.contains("step_cap")) s.settings.step_cap = integer(st["step_cap"], "$.settings.step_cap");
    if (st.contains("tolerance") && !is_exact_v<Scalar>) s.tolerance.eps = scalar<Scalar>(st["tolerance"], "$.settings.tolerance");
    if (!(s.settings.separation > 1)) fail("$.settings.separation", "must exceed 1");
    if (!(s.settings.shrink > 0) || !(s.settings.shrink < 1)) fail("$.settings.shrink", "must lie in (0, 1)");
    if (s.settings.step_cap < 0) fail("$.settings.step_cap", "must be non-negative");
  }
  if (tolerance && !is_exact_v<Scalar>) s.tolerance.eps = *tolerance;

  const json spaces = j.value("spaces", json::object());
  if (!spaces.is_object()) fail("$.spaces", "expected an object");
  for (const auto& [name, sj] : spaces.items()) {
    if (sj.contains("product")) continue;
    const auto path = "$.spaces." + name;
    const auto blocks = read_blocks(member(sj, "blocks", path), path + ".blocks");
    auto group = sj.contains("group") ? read_group<Scalar>(sj["group"], path + ".group", *blocks, s.tolerance)
                                      : trivial_group<Scalar>(*blocks);
    s.spaces[name] = {make_space<Scalar>(blocks, std::move(group), s.tolerance, s.settings), std::nullopt};
  }
  for (const auto& [name, sj] : spaces.items()) {
    if (!sj.contains("product")) continue;
    const auto path = "$.spaces." + name + ".product";
    const auto& factors = array_at(sj["product"], path);
    if (factors.size() != 2) fail(path, "expected two factor names");
    const auto v = text(factors[0], path), w = text(factors[1], path);
    if (!s.spaces.count(v) || !s.spaces.count(w) || s.spaces[v].product || s.spaces[w].product)
      fail(path, "factors must name non-product spaces");
    try {
      s.spaces[name] = {product_space(s.spaces[v].space, s.spaces[w].space), std::make_pair(v, w)};
    } catch (const DomainError& e) {
      fail(path, e.what());
    }
  }

  const json domains = j.value("domains", json::object());
  if (!domains.is_object()) fail("$.domains", "expected an object");
  for (const auto& [name, dj] : domains.items()) {
    const auto path = "$.domains." + name;
    const auto sname = text(member(dj, "space", path), path + ".space");
    if (!s.spaces.count(sname)) fail(path + ".space", "unknown space '" + sname + "'");
    const auto& space = s.spaces[sname].space;
    ProductBall<Scalar> b;
    b.blocks = space->blocks;
    b.center = vector_of<Scalar>(member(dj, "center", path), path + ".center", space->dimension());
    b.radii = scalars<Scalar>(member(dj, "radii", path), path + ".radii");
    if (static_cast<int>(b.radii.size()) != space->blocks->coarse_count())
      fail(path + ".radii", "expected one radius per coarse block");
    for (const auto& r : b.radii)
      if (!(r > 0)) fail(path + ".radii", "radii must be positive");
    s.domains[name] = {sname, b};
  }

  const json configs = j.value("configs", json::object());
  if (!configs.is_object()) fail("$.configs", "expected an object");
  for (const auto& [name, cj] : configs.items()) {
    const auto path = "$.configs." + name;
    const auto dname = text(member(cj, "domain", path), path + ".domain");
    const auto& d = find_domain(s, dname, path + ".domain");
    s.configs[name] = {dname, read_maps(member(cj, "maps", path), path + ".maps", s.spaces[d.space].space, d.ball)};
  }

  const json trees = j.value("trees", json::object());
  if (!trees.is_object()) fail("$.trees", "expected an object");
  for (const auto& [name, tj] : trees.items()) {
    const auto path = "$.trees." + name;
    SceneTree<Scalar> st;
    st.space = text(member(tj, "space", path), path + ".space");
    if (!s.spaces.count(st.space) || !s.spaces[st.space].product) fail(path + ".space", "must name a product space");
    st.v_domain = text(member(tj, "v_domain", path), path + ".v_domain");
    st.w_domain = text(member(tj, "w_domain", path), path + ".w_domain");
    const auto& dv = find_domain(s, st.v_domain, path + ".v_domain");
    const auto& dw = find_domain(s, st.w_domain, path + ".w_domain");
    const auto& [vname, wname] = *s.spaces[st.space].product;
    if (dv.space != vname || dw.space != wname) fail(path, "domains must live on the factors of '" + st.space + "'");
    auto& t = st.tree;
    t.space = s.spaces[st.space].space;
    t.v_domain = dv.ball;
    t.w_domain = dw.ball;
    t.root = tj.contains("root") && !tj["root"].is_null() ? integer(tj["root"], path + ".root") : -1;
    const json vertex_list = tj.value("vertices", json::array());
    const auto& vertices = array_at(vertex_list, path + ".vertices");
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      const auto vp = path + ".vertices[" + std::to_string(k) + "]";
      const auto& vj = vertices[k];
      TreeVertex<Scalar> v;
      v.white = integer(member(vj, "white", vp), vp + ".white");
      v.black = integer(member(vj, "black", vp), vp + ".black");
      for (const auto& x : array_at(member(vj, "xi", vp), vp + ".xi")) v.xi.push_back(integer(x, vp + ".xi"));
      const auto& edges = array_at(member(vj, "edges", vp), vp + ".edges");
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto ep = vp + ".edges[" + std::to_string(e) + "]";
        if (edges[e].contains("child")) v.edges.push_back(TreeEdge{integer(edges[e]["child"], ep + ".child"), -1});
        else v.edges.push_back(TreeEdge{-1, integer(member(edges[e], "input", ep), ep + ".input")});
      }
      v.p = read_maps(member(vj, "p", vp), vp + ".p", s.spaces[vname].space, dv.ball);
      v.q = read_maps(member(vj, "q", vp), vp + ".q", s.spaces[wname].space, dw.ball);
      t.vertices.push_back(std::move(v));
    }
    const auto report = tree_validate(t);
    if (!report.well_formed) fail(path, "malformed tree: " + (report.problems.empty() ? "" : report.problems.front()));
    s.trees[name] = std::move(st);
  }
  return s;
}

template <class Scalar>
Scene<Scalar> load_scene(const std::string& path, std::optional<Scalar> tolerance) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read scene file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scene<Scalar>(buf.str(), tolerance);
}

template <class Scalar>
std::string serialize_scene(const Scene<Scalar>& s) {
  json j;
  j["format"] = scene_format;
  j["numeric"] = mode_name(s.mode);
  json settings{{"separation", write(s.settings.separation)},
                {"shrink", write(s.settings.shrink)},
                {"step_cap", s.settings.step_cap}};
  if constexpr (!is_exact_v<Scalar>) settings["tolerance"] = s.tolerance.eps;
  j["settings"] = settings;
  json spaces = json::object();
  for (const auto& [name, sp] : s.spaces) {
    if (sp.product) spaces[name] = json{{"product", {sp.product->first, sp.product->second}}};
    else spaces[name] = json{{"blocks", write_blocks(*sp.space->blocks)}, {"group", write_group(sp.space->group)}};
  }
  j["spaces"] = spaces;
  json domains = json::object();
  for (const auto& [name, d] : s.domains) {
    json radii = json::array();
    for (const auto& r : d.ball.radii) radii.push_back(write(r));
    domains[name] = json{{"space", d.space}, {"center", write_vec(d.ball.center)}, {"radii", radii}};
  }
  j["domains"] = domains;
  json configs = json::object();
  for (const auto& [name, c] : s.configs) configs[name] = json{{"domain", c.domain}, {"maps", write_maps(c.config)}};
  j["configs"] = configs;
  json trees = json::object();
  for (const auto& [name, st] : s.trees) {
    json vertices = json::array();
    for (const auto& v : st.tree.vertices) {
      json edges = json::array();
      for (const auto& e : v.edges) edges.push_back(e.is_input() ? json{{"input", e.input}} : json{{"child", e.child}});
      vertices.push_back(json{{"white", v.white},
                              {"black", v.black},
                              {"xi", v.xi},
                              {"edges", edges},
                              {"p", write_maps(v.p)},
                              {"q", write_maps(v.q)}});
    }
    trees[name] = json{{"space", st.space},
                       {"v_domain", st.v_domain},
                       {"w_domain", st.w_domain},
                       {"root", st.tree.trivial() ? json(nullptr) : json(st.tree.root)},
                       {"vertices", vertices}};
  }
  j["trees"] = trees;
  return j.dump(2) + "\n";
}

template <class Scalar>
std::string config_json(const Config<Scalar>& x) {
  return write_maps(x).dump();
}

template <class Scalar>
std::string map_json(const DilationMap<Scalar>& f) {
  return write_map(f).dump();
}

template <class Scalar>
std::string scalar_json(const Scalar& v) {
  return write(v).dump();
}

template <class Scalar>
std::string render_svg(const Scene<Scalar>& s, const std::vector<std::string>& names, const RenderOptions& o) {
  std::string dname = o.domain;
  if (dname.empty() && !names.empty()) {
    s.config(names.front());
    dname = s.configs.at(names.front()).domain;
  }
  if (dname.empty()) {
    if (s.domains.empty()) throw DomainError("render: the scene has no domain");
    dname = s.domains.begin()->first;
  }
  const auto& dom = s.domain(dname);
  const auto [a, b] = o.axes;
  if (a < 0 || b < 0 || a >= dom.dimension() || b >= dom.dimension() || a == b)
    throw DomainError("render: axes (" + std::to_string(a) + "," + std::to_string(b) + ") out of range for dimension " +
                      std::to_string(dom.dimension()));
  const int block = dom.blocks->coarse_of_axis(a);
  if (dom.blocks->coarse_of_axis(b) != block) throw DomainError("render: axes must lie in one coarse block");
  const double R = to_double(dom.radii[block]);
  const double ox = to_double(dom.center(a)), oy = to_double(dom.center(b));
  auto circle = [&](const std::string& id, const std::string& cls, double x, double y, double r, const std::string& style) {
    return "  <circle id=\"" + id + "\" class=\"" + cls + "\" cx=\"" + fixed((x - ox) / R) + "\" cy=\"" +
           fixed(-(y - oy) / R) + "\" r=\"" + fixed(r / R) + "\" " + style + "/>\n";
  };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"512\" height=\"512\" "
      "viewBox=\"-1.05 -1.05 2.1 2.1\">\n";
  out += circle("domain", "domain", ox, oy, R, "fill=\"none\" stroke=\"black\" stroke-width=\"0.006\"");
  const double grow = to_double(s.settings.separation);
  for (std::size_t n = 0; n < names.size(); ++n) {
    const auto& x = s.config(names[n]);
    if (!same_blocks(x.space->blocks, dom.blocks))
      throw DomainError("render: configuration '" + names[n] + "' does not live on domain '" + dname + "'");
    const std::string color = palette[n % (sizeof palette / sizeof *palette)];
    for (int k = 0; k < x.arity(); ++k) {
      const auto ball = x.component_ball(k);
      const double cx = to_double(ball.center(a)), cy = to_double(ball.center(b)), r = to_double(ball.radii[block]);
      const auto id = names[n] + "-" + std::to_string(k + 1);
      out += circle(id, names[n], cx, cy, r,
                    "fill=\"" + color + "\" fill-opacity=\"0.25\" stroke=\"" + color + "\" stroke-width=\"0.004\"");
      if (o.enlarged)
        out += circle(id + "-sep", names[n] + " enlarged", cx, cy, grow * r,
                      "fill=\"none\" stroke=\"" + color + "\" stroke-width=\"0.004\" stroke-dasharray=\"0.02 0.02\"");
    }
  }
  return out + "</svg>\n";
}

template <class Scalar>
Scene<Scalar> scene_fragment(const std::vector<std::pair<std::string, Config<Scalar>>>& configs,
                             const std::vector<std::pair<std::string, SuperTree<Scalar>>>& trees) {
  Scene<Scalar> s;
  std::vector<std::pair<const Space<Scalar>*, std::string>> known;
  std::function<std::string(const SpacePtr<Scalar>&)> space_name = [&](const SpacePtr<Scalar>& sp) {
    for (const auto& [ptr, name] : known)
      if (ptr == sp.get()) return name;
    SceneSpace<Scalar> entry{sp, std::nullopt};
    if (sp->is_product()) entry.product = std::make_pair(space_name(sp->first), space_name(sp->second));
    const auto name = "S" + std::to_string(known.size() + 1);
    known.emplace_back(sp.get(), name);
    s.spaces[name] = entry;
    if (known.size() == 1) {
      s.settings = sp->settings;
      s.tolerance = sp->tol;
    }
    return name;
  };
  auto domain_name = [&](const SpacePtr<Scalar>& sp, const ProductBall<Scalar>& ball) {
    const auto sname = space_name(sp);
    for (const auto& [name, d] : s.domains)
      if (d.space == sname && equal(d.ball, ball, Tolerance<Scalar>{})) return name;
    const auto name = "D" + std::to_string(s.domains.size() + 1);
    s.domains[name] = {sname, ball};
    return name;
  };
  for (const auto& [name, x] : configs) s.configs[name] = {domain_name(x.space, x.domain), x};
  for (const auto& [name, t] : trees) {
    SceneTree<Scalar> st{space_name(t.space), domain_name(t.space->first, t.v_domain),
                         domain_name(t.space->second, t.w_domain), t};
    s.trees[name] = std::move(st);
  }
  return s;
}

#define DISKOP_INSTANTIATE(S)                                                                                   \
  template struct Scene<S>;                                                                                     \
  template Scene<S> scene_fragment(const std::vector<std::pair<std::string, Config<S>>>&,                       \
                                   const std::vector<std::pair<std::string, SuperTree<S>>>&);                                                                                     \
  template Scene<S> parse_scene(const std::string&, std::optional<S>);                                          \
  template Scene<S> load_scene(const std::string&, std::optional<S>);                                           \
  template std::string serialize_scene(const Scene<S>&);                                                        \
  template std::string config_json(const Config<S>&);                                                           \
  template std::string map_json(const DilationMap<S>&);                                                         \
  template std::string scalar_json(const S&);                                                                   \
  template std::string render_svg(const Scene<S>&, const std::vector<std::string>&, const RenderOptions&);

DISKOP_INSTANTIATE(double)
DISKOP_INSTANTIATE(Rational)

}  // namespace diskop
