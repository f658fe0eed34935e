// diskop: command-line front end. Exit codes: 0 success, 1 domain error or
// failed verification, 2 usage error.
#include "diskop/error.hpp"
#include "diskop/flows.hpp"
#include "diskop/scene.hpp"
#include "diskop/separated.hpp"
#include "diskop/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace diskop;
using json = nlohmann::ordered_json;

namespace {

struct Args {
  std::string command;
  bool json = false;
  std::optional<double> tolerance;
  std::string scene;
  std::string config, x, y, tree, level = "star", kind, t, inner, outer, domain, output, suite = "all";
  std::vector<std::string> with, configs;
  std::optional<std::vector<int>> alpha, subgroup;
  std::vector<int> axes{0, 1};
  bool enlarged = false, timing = false;
  int trials = 100, threads = 0;
  std::optional<int> trial;
  std::uint64_t seed = 42;
};

// Component indices are shown 1-based, as in the mathematical notation.
json one_based(const std::vector<int>& v) {
  json out = json::array();
  for (int i : v) out.push_back(i + 1);
  return out;
}

json classes(const std::vector<std::vector<int>>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(one_based(c));
  return out;
}

template <class S>
json maps(const Config<S>& x) {
  return json::parse(config_json(x));
}

template <class S>
json num(const S& v) {
  return json::parse(scalar_json(v));
}

template <class S>
json config_summary(const Config<S>& x) {
  const auto level = membership_level(x);
  return json{{"arity", x.arity()}, {"level", level ? json(level_name(*level)) : json(nullptr)}, {"maps", maps(x)}};
}

std::string text_of(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Human rendering: one "key: value" line per field, nested objects indented,
// arrays of objects as numbered entries.
void human(std::ostream& out, const json& j, int indent = 0) {
  const std::string pad(indent, ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      out << pad << key << ":\n";
      human(out, value, indent + 2);
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << pad << key << ":\n";
      int n = 0;
      for (const auto& e : value) {
        out << pad << "  [" << ++n << "]\n";
        human(out, e, indent + 4);
      }
    } else {
      out << pad << key << ": " << text_of(value) << "\n";
    }
  }
}

void emit(const Args& a, const json& j) {
  if (a.json) std::cout << j.dump(2) << "\n";
  else human(std::cout, j);
}

template <class S>
Scene<S> load(const Args& a) {
  if (a.scene.empty()) throw UsageError("--scene is required");
  std::optional<S> tol;
  if (a.tolerance) tol = S(*a.tolerance);
  return load_scene<S>(a.scene, tol);
}

// Names given on the command line must exist in the scene.
template <class Map>
void check_name(const Map& m, const std::string& name, const char* flag) {
  if (name.empty()) throw UsageError(std::string(flag) + " is required");
  if (!m.count(name)) throw UsageError(std::string(flag) + ": the scene has no entry named '" + name + "'");
}

template <class S>
const Config<S>& named(const Scene<S>& s, const std::string& name, const char* flag) {
  check_name(s.configs, name, flag);
  return s.config(name);
}

template <class S>
const SuperTree<S>& named_tree(const Scene<S>& s, const std::string& name) {
  check_name(s.trees, name, "--tree");
  return s.tree(name);
}

template <class S>
S parse_param(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  return parse_scalar<S>(text);
}

StructureMap structure_map(const std::vector<int>& one_based_alpha, int target) {
  StructureMap sm{target, {}};
  for (int v : one_based_alpha) {
    if (v < 1 || v > target) throw DomainError("--alpha entries must lie in 1.." + std::to_string(target));
    sm.alpha.push_back(v - 1);
  }
  return sm;
}

template <class S>
json division_json(const StructureMap& alpha, const std::vector<Config<S>>& quotients) {
  json q = json::array();
  for (const auto& c : quotients) q.push_back(config_summary(c));
  return json{{"divides", true}, {"alpha", one_based(alpha.alpha)}, {"quotients", q}};
}

template <class S>
json core_form_json(const CoreForm<S>& k) {
  json cells = json::array();
  for (std::size_t i = 0; i < k.cells.size(); ++i)
    for (std::size_t j = 0; j < k.cells[i].size(); ++j) {
      const auto& cell = k.cells[i][j];
      cells.push_back(json{{"row", i + 1}, {"column", j + 1}, {"unary", cell.unary()}, {"c", maps(cell.c)}, {"d", maps(cell.d)}});
    }
  return json{{"arity", k.arity()}, {"sigma", one_based(k.sigma)}, {"a", maps(k.a)}, {"b", maps(k.b)}, {"cells", cells}};
}

template <class S>
int run(const Args& a) {
  const auto& c = a.command;
  if (c == "verify") {
    VerifyOptions o;
    o.threads = a.threads;
    o.only_trial = a.trial;
    const auto report = verify_suite<S>(a.seed, a.trials, parse_suite_selection(a.suite), o);
    if (a.json) {
      std::cout << report_json(report, a.timing);
    } else {
      std::cout << "seed " << report.seed << ", " << scalar_traits<S>::name << " mode, " << report.trials
                << " trials per suite\n";
      for (const auto& s : report.suites) {
        std::cout << "  " << s.name << ": " << s.trials << " checked, " << s.failures << " failed";
        if (s.starved) std::cout << ", " << s.starved << " starved";
        if (a.timing) std::cout << ", " << s.elapsed << " s";
        std::cout << "\n";
        if (s.counterexample)
          std::cout << "    first failure: trial " << s.counterexample->trial << ": " << s.counterexample->check << ": "
                    << s.counterexample->message << "\n";
      }
    }
    return report.failures() == 0 ? 0 : 1;
  }

  const auto scene = load<S>(a);
  if (c == "validate") {
    const auto& x = named(scene, a.config, "--config");
    const auto level = parse_level(a.level);
    const auto report = validate(x, level);
    json violations = json::array();
    for (const auto& v : report.violations) {
      json e{{"predicate", v.predicate}, {"group_element", x.space->group.labels[v.g]}, {"i", v.i + 1}};
      if (v.j >= 0) e["j"] = v.j + 1;
      violations.push_back(e);
    }
    const auto highest = membership_level(x);
    emit(a, json{{"config", a.config},
                 {"level", level_name(level)},
                 {"valid", report.valid},
                 {"highest_level", highest ? json(level_name(*highest)) : json(nullptr)},
                 {"violations", violations}});
    return 0;
  }
  if (c == "compose") {
    const auto& x = named(scene, a.x, "--x");
    std::vector<Config<S>> q;
    for (const auto& n : a.with) q.push_back(named(scene, n, "--with"));
    const auto result = a.alpha ? operad_compose(x, structure_map(*a.alpha, x.arity()), q) : compose(x, q);
    emit(a, json{{"result", config_summary(result)}});
    return 0;
  }
  if (c == "divide") {
    const auto& x = named(scene, a.x, "--x");
    const auto& y = named(scene, a.y, "--y");
    if (a.alpha) {
      const auto alpha = structure_map(*a.alpha, x.arity());
      if (alpha.source() != y.arity()) throw DomainError("--alpha needs one entry per component of y");
      const auto q = left_cancel(x, y, alpha);
      emit(a, q ? division_json(alpha, *q) : json{{"divides", false}});
      return 0;
    }
    std::optional<std::vector<int>> subgroup;
    if (a.subgroup) {
      subgroup.emplace();
      for (int g : *a.subgroup) subgroup->push_back(g - 1);
    }
    const auto d = divides(x, y, subgroup);
    emit(a, d ? division_json(d->alpha, d->quotients) : json{{"divides", false}});
    return 0;
  }
  if (c == "partition") {
    const auto& x = named(scene, a.x, "--x");
    const auto& y = named(scene, a.y, "--y");
    const auto data = intersection_data(x, y);
    json meets = json::array();
    for (int i = 0; i < x.arity(); ++i) meets.push_back(one_based(data.image(i)));
    const auto p = separation_partition(x, y);
    emit(a, json{{"meets", meets},
                 {"x_classes", classes(data.self_partition)},
                 {"L1", one_based(p.L1)},
                 {"R1", one_based(p.R1)},
                 {"L2", one_based(p.L2)},
                 {"R2", one_based(p.R2)}});
    return 0;
  }
  if (c == "triangles") {
    const auto& x = named(scene, a.x, "--x");
    const auto& y = named(scene, a.y, "--y");
    const auto t = triangle_decomposition(x, y);
    const auto problem = check_triangle(x, y, t);
    emit(a, json{{"L1", one_based(t.partition.L1)},
                 {"R1", one_based(t.partition.R1)},
                 {"L2", one_based(t.partition.L2)},
                 {"R2", one_based(t.partition.R2)},
                 {"right", config_summary(t.right)},
                 {"left", config_summary(t.left)},
                 {"down", config_summary(t.down)},
                 {"sigma_x", one_based(t.sigma_x)},
                 {"sigma_y", one_based(t.sigma_y)},
                 {"equations_hold", !problem}});
    return problem ? 1 : 0;
  }
  if (c == "tree-eval") {
    if (a.tree.empty()) throw UsageError("--tree is required");
    const auto& t = named_tree(scene, a.tree);
    const auto r = tree_validate(t);
    emit(a, json{{"tree", a.tree},
                 {"well_formed", r.well_formed},
                 {"reduced", r.reduced},
                 {"proper", r.proper},
                 {"core", r.core},
                 {"height", r.height},
                 {"problems", r.problems},
                 {"value", config_summary(tree_evaluate(t))}});
    return 0;
  }
  if (c == "core-normalize") {
    const auto w = !a.tree.empty() ? tree_evaluate(named_tree(scene, a.tree)) : named(scene, a.config, "--config or --tree");
    const auto crit = criticality(w);
    if (!crit.witness) throw DomainError("not critical: " + crit.reason);
    const auto k = core_normal_form(w, *crit.witness);
    emit(a, json{{"P", classes(crit.witness->P)},
                 {"Q", classes(crit.witness->Q)},
                 {"normal_form", core_form_json(k)}});
    return 0;
  }
  if (c == "flow") {
    const auto& x = named(scene, a.config, "--config");
    const auto kind = parse_flow(a.kind);
    emit(a, json{{"kind", flow_name(kind)}, {"t", num(parse_param<S>(a.t, "--t"))},
                 {"result", config_summary(flow_apply(x, kind, parse_param<S>(a.t, "--t")))}});
    return 0;
  }
  if (c == "entry-time") {
    if (!a.tree.empty()) {
      const auto e = core_entry_time(named_tree(scene, a.tree));
      emit(a, json{{"tree", a.tree},
                   {"t", num(e.t)},
                   {"steps", e.steps},
                   {"P", classes(e.witness.P)},
                   {"Q", classes(e.witness.Q)},
                   {"shrunk", config_summary(e.shrunk)}});
      return 0;
    }
    const auto& x = named(scene, a.config, "--config");
    if (a.inner.empty() || a.outer.empty()) throw UsageError("--inner and --outer are required");
    check_name(scene.domains, a.inner, "--inner");
    check_name(scene.domains, a.outer, "--outer");
    const auto r = entry_time(x, parse_flow(a.kind), scene.domain(a.inner), scene.domain(a.outer));
    json binding = nullptr;
    if (r.binding) {
      binding = json{{"constraint", r.binding->what}, {"group_element", r.binding->g + 1}, {"i", r.binding->i + 1}, {"block", r.binding->block + 1}};
      if (r.binding->j >= 0) binding["j"] = r.binding->j + 1;
    }
    emit(a, json{{"kind", flow_name(r.kind)}, {"target", r.target}, {"t", num(r.t)}, {"binding", binding}});
    return 0;
  }
  if (c == "render") {
    RenderOptions o;
    if (a.axes.size() != 2) throw UsageError("--axes takes two coordinate indices");
    o.axes = {a.axes[0], a.axes[1]};
    o.enlarged = a.enlarged;
    o.domain = a.domain;
    for (const auto& n : a.configs) check_name(scene.configs, n, "--configs");
    if (!a.domain.empty()) check_name(scene.domains, a.domain, "--domain");
    const auto svg = render_svg(scene, a.configs, o);
    if (a.output.empty()) {
      std::cout << svg;
    } else {
      std::ofstream out(a.output, std::ios::binary);
      if (!out) throw UsageError("cannot write '" + a.output + "'");
      out << svg;
      if (a.json) std::cout << json{{"written", a.output}, {"bytes", svg.size()}}.dump(2) << "\n";
    }
    return 0;
  }
  throw UsageError("unknown subcommand '" + c + "'");
}

// Environment first, then the mode the scene declares, else exact.
NumericMode resolve_mode(const Args& a) {
  if (const char* env = std::getenv("DISKOP_NUMERIC_MODE"); env && *env) {
    try {
      return parse_mode(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("DISKOP_NUMERIC_MODE must be exact or float, not '") + env + "'");
    }
  }
  if (a.command == "verify" || a.scene.empty()) return NumericMode::Exact;
  std::ifstream in(a.scene);
  if (!in) throw UsageError("cannot read scene file '" + a.scene + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return declared_mode(buf.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Little-disks operad toolkit: configurations, divisibility, separated pairs, tensor trees and flows."};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Args a;
  app.add_flag("--json", a.json, "Machine-readable JSON output");
  app.add_option("--tolerance", a.tolerance, "Comparison tolerance in float mode")->check(CLI::NonNegativeNumber);

  auto scene_opt = [&](CLI::App* s) { s->add_option("--scene", a.scene, "Scene JSON file")->required(); };
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&a, name] { a.command = name; });
    return s;
  };

  auto* validate_cmd = sub("validate", "Membership test of a configuration");
  scene_opt(validate_cmd);
  validate_cmd->add_option("--config", a.config, "Configuration name")->required();
  validate_cmd->add_option("--level", a.level, "ambient, star or separated")
      ->check(CLI::IsMember({"ambient", "star", "separated"}));

  auto* compose_cmd = sub("compose", "Operad composition x o (q1, ..., qn)");
  scene_opt(compose_cmd);
  compose_cmd->add_option("--x", a.x, "Outer configuration")->required();
  compose_cmd->add_option("--with", a.with, "Inner configurations, in slot order")->delimiter(',');
  compose_cmd->add_option("--alpha", a.alpha, "Structure map (1-based), composing along it")->delimiter(',');

  auto* divide_cmd = sub("divide", "Does x divide y? Structure map and quotients");
  scene_opt(divide_cmd);
  divide_cmd->add_option("--x", a.x, "Divisor")->required();
  divide_cmd->add_option("--y", a.y, "Dividend")->required();
  divide_cmd->add_option("--subgroup", a.subgroup, "Group elements (1-based) for equivariant division")->delimiter(',');
  divide_cmd->add_option("--alpha", a.alpha, "Cancel along this structure map (1-based)")->delimiter(',');

  auto* partition_cmd = sub("partition", "Intersection data and the L/R partitions of a pair");
  scene_opt(partition_cmd);
  partition_cmd->add_option("--x", a.x)->required();
  partition_cmd->add_option("--y", a.y)->required();

  auto* triangles_cmd = sub("triangles", "Triangle decomposition of a separated pair");
  scene_opt(triangles_cmd);
  triangles_cmd->add_option("--x", a.x)->required();
  triangles_cmd->add_option("--y", a.y)->required();

  auto* tree_cmd = sub("tree-eval", "Validate and evaluate a tree in superposition");
  scene_opt(tree_cmd);
  tree_cmd->add_option("--tree", a.tree)->required();

  auto* core_cmd = sub("core-normalize", "Criticality witness and core normal form");
  scene_opt(core_cmd);
  auto* core_config = core_cmd->add_option("--config", a.config, "Configuration on a product space");
  auto* core_tree = core_cmd->add_option("--tree", a.tree, "Tree whose value is normalised");
  core_config->excludes(core_tree);

  auto* flow_cmd = sub("flow", "Apply a shrinking flow at time t");
  scene_opt(flow_cmd);
  flow_cmd->add_option("--config", a.config)->required();
  const auto kinds = CLI::IsMember({"shrink-left", "shrink-right", "shrink-right-product"});
  flow_cmd->add_option("--kind", a.kind, "shrink-left, shrink-right or shrink-right-product")->required()->check(kinds);
  flow_cmd->add_option("--t", a.t, "Time in [0, 1), e.g. 1/2")->required();

  auto* entry_cmd = sub("entry-time", "First time a flow enters its target");
  scene_opt(entry_cmd);
  auto* entry_config = entry_cmd->add_option("--config", a.config);
  entry_cmd->add_option("--kind", a.kind, "Flow kind")->check(kinds);
  entry_cmd->add_option("--inner", a.inner, "Domain name of B");
  entry_cmd->add_option("--outer", a.outer, "Domain name of B'");
  auto* entry_tree = entry_cmd->add_option("--tree", a.tree, "Core entry time of a tree's value");
  entry_config->excludes(entry_tree);

  auto* render_cmd = sub("render", "SVG of configurations projected to two axes");
  scene_opt(render_cmd);
  render_cmd->add_option("--configs", a.configs, "Configuration names")->delimiter(',');
  render_cmd->add_option("--axes", a.axes, "Two coordinate indices (0-based) in one coarse block")->delimiter(',')->expected(2);
  render_cmd->add_flag("--enlarged", a.enlarged, "Dashed separation-enlarged circles");
  render_cmd->add_option("--domain", a.domain, "Domain drawn as the outer circle");
  render_cmd->add_option("--output,-o", a.output, "Output file (stdout by default)");

  auto* verify_cmd = sub("verify", "Randomised property suites");
  verify_cmd->add_option("--suite", a.suite, "all or a comma-separated list");
  verify_cmd->add_option("--trials", a.trials, "Trials per suite");
  verify_cmd->add_option("--seed", a.seed, "Run seed");
  verify_cmd->add_option("--threads", a.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--trial", a.trial, "Re-run a single trial index");
  verify_cmd->add_flag("--timing", a.timing, "Include elapsed times (reports are then not reproducible byte for byte)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (a.command == "entry-time" && a.tree.empty() && (a.config.empty() || a.kind.empty()))
      throw UsageError("entry-time needs --tree, or --config with --kind, --inner and --outer");
    if (a.command == "core-normalize" && a.tree.empty() && a.config.empty())
      throw UsageError("core-normalize needs --config or --tree");
    return resolve_mode(a) == NumericMode::Exact ? run<Rational>(a) : run<double>(a);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant failed: " << e.what() << "\n";
    return 1;
  }
}
