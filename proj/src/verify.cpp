#include "diskop/verify.hpp"

#include "diskop/error.hpp"
#include "diskop/flows.hpp"
#include "diskop/scene.hpp"
#include "diskop/separated.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <thread>

namespace diskop {

using nlohmann::json;

namespace {

constexpr int rejection_limit = 100000;

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

/// Thrown by a check; carries the property name.
struct CheckFailed {
  std::string check, message;
};

void require(bool ok, const std::string& check, const std::string& message = "") {
  if (!ok) throw CheckFailed{check, message.empty() ? check + " does not hold" : message};
}

struct Starved {};

template <class S>
struct Trial {
  Rng rng;
  long rejections = 0;
  // Inputs recorded for the counterexample scene.
  std::vector<std::pair<std::string, Config<S>>> configs;
  std::vector<std::pair<std::string, SuperTree<S>>> trees;
  std::string command;

  template <class T>
  T need(std::optional<T> value) {
    if (!value) throw Starved{};
    return std::move(*value);
  }
  Config<S> member(const SpacePtr<S>& space, const ProductBall<S>& domain, int arity, MembershipLevel level,
                   const DiskParams& p = {}) {
    DiskParams q = p;
    q.max_rejections = rejection_limit;
    int rejected = 0;
    auto x = random_member(rng, space, domain, arity, level, q, &rejected);
    rejections += rejected;
    return need(std::move(x));
  }
  void record(const std::string& name, const Config<S>& x) { configs.emplace_back(name, x); }
  void record(const std::string& name, const SuperTree<S>& t) { trees.emplace_back(name, t); }
};

// Affine maps agree iff they agree on 0 and the standard basis.
template <class S>
bool same_action(const DilationMap<S>& f, const DilationMap<S>& g, const Tolerance<S>& tol) {
  const int d = f.dimension();
  if (g.dimension() != d) return false;
  Vec<S> p = Vec<S>::Zero(d);
  if (!approx_equal(f.apply(p), g.apply(p), tol)) return false;
  for (int a = 0; a < d; ++a) {
    p = Vec<S>::Zero(d);
    p(a) = 1;
    if (!approx_equal(f.apply(p), g.apply(p), tol)) return false;
  }
  return true;
}

std::string show(const Permutation& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + std::to_string(p[i]);
  return out + "]";
}

// The plane with the symmetries of the square, acting by signed permutations.
template <class S>
SpacePtr<S> square_space() {
  auto blocks = BlockStructure::spherical(2);
  std::vector<Mat<S>> mats;
  for (int swap = 0; swap < 2; ++swap)
    for (int sx : {1, -1})
      for (int sy : {1, -1}) {
        Mat<S> m = Mat<S>::Zero(2, 2);
        if (swap) m(0, 1) = sx, m(1, 0) = sy;
        else m(0, 0) = sx, m(1, 1) = sy;
        mats.push_back(m);
      }
  const int n = static_cast<int>(mats.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mats[a] * mats[b] == mats[c]) table[a][b] = c;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  return make_space<S>(blocks, make_group<S>(*blocks, labels, table, mats, {}));
}

// ---------------------------------------------------------------- operad laws

template <class S>
void operad_laws(Trial<S>& T) {
  auto& rng = T.rng;
  const int d = uniform_int(rng, 1, 4);
  SpacePtr<S> space;
  if (d == 2 && uniform_int(rng, 0, 1)) {
    space = square_space<S>();
  } else {
    const auto blocks = random_blocks(rng, d);
    space = make_space<S>(blocks, trivial_group<S>(*blocks));
  }
  const auto& tol = space->tol;
  const auto dom = ProductBall<S>::unit(space->blocks);
  const auto x = random_config<S>(rng, space, dom, uniform_int(rng, 0, 4));
  std::vector<Config<S>> ys, zs_flat;
  std::vector<std::vector<Config<S>>> zs;
  std::vector<int> sizes;
  for (int j = 0; j < x.arity(); ++j) {
    ys.push_back(random_config<S>(rng, space, dom, uniform_int(rng, 0, 3)));
    sizes.push_back(ys.back().arity());
    zs.emplace_back();
    for (int k = 0; k < ys.back().arity(); ++k) {
      zs.back().push_back(random_config<S>(rng, space, dom, uniform_int(rng, 0, 2)));
      zs_flat.push_back(zs.back().back());
    }
  }
  T.record("x", x);
  std::string with;
  for (int j = 0; j < x.arity(); ++j) {
    T.record("y" + std::to_string(j), ys[j]);
    with += (j ? "," : "") + ("y" + std::to_string(j));
  }
  T.command = "compose --x x --with " + with;

  // Associativity, against the pointwise composite x_j o y_jk o z_jkl.
  std::vector<Config<S>> inner;
  for (int j = 0; j < x.arity(); ++j) inner.push_back(compose(ys[j], zs[j]));
  const auto left = compose(compose(x, ys), zs_flat);
  const auto right = compose(x, inner);
  require(equal(left, right), "associativity");
  int idx = 0;
  for (int j = 0; j < x.arity(); ++j)
    for (int k = 0; k < ys[j].arity(); ++k)
      for (int l = 0; l < zs[j][k].arity(); ++l)
        require(same_action(left[idx++], x[j] * (ys[j][k] * zs[j][k][l]), tol), "associativity (pointwise)");
  require(idx == left.arity(), "associativity (arity)");

  // Units on both sides.
  const auto id = unit(space, dom);
  require(equal(compose(id, {x}), x), "left unit");
  require(equal(compose(x, std::vector<Config<S>>(x.arity(), id)), x), "right unit");

  // (sigma x) o (y^j) = sigma<sizes> (x o (y^sigma(j))).
  const auto sigma = random_permutation(rng, x.arity());
  std::vector<Config<S>> permuted;
  std::vector<int> permuted_sizes;
  for (int j = 0; j < x.arity(); ++j) {
    permuted.push_back(ys[sigma[j]]);
    permuted_sizes.push_back(sizes[sigma[j]]);
  }
  require(equal(compose(act(sigma, 0, x), ys), act(block_permutation(permuted_sizes, sigma), 0, compose(x, permuted))),
          "equivariance in the outer slot", "sigma = " + show(sigma));

  // x o (tau_j y^j) = (+ tau_j)(x o y).
  std::vector<Config<S>> moved;
  std::vector<Permutation> taus;
  for (int j = 0; j < x.arity(); ++j) {
    taus.push_back(random_permutation(rng, sizes[j]));
    moved.push_back(act(taus.back(), 0, ys[j]));
  }
  require(equal(compose(x, moved), act(direct_sum_permutation(taus), 0, compose(x, ys))), "equivariance in the inner slots");

  // The group acts by operad maps.
  const int g = uniform_int(rng, 0, space->group.order() - 1);
  std::vector<Config<S>> gys;
  for (const auto& y : ys) gys.push_back(act(identity_permutation(y.arity()), g, y));
  const auto total = compose(x, ys);
  require(equal(act(identity_permutation(total.arity()), g, total), compose(act(identity_permutation(x.arity()), g, x), gys)),
          "group equivariance", "g = " + std::to_string(g));
}

// ------------------------------------------------------------- divisibility

// Exhaustive search: every alpha whose forced quotients x_j^-1 o y_i form an
// ambient (and, for star y, star) element, in lexicographic order.
template <class S>
std::vector<StructureMap> exhaustive_divisions(const Config<S>& x, const Config<S>& y) {
  std::vector<StructureMap> out;
  const int n = x.arity(), m = y.arity();
  if (n == 0) {
    if (m == 0) out.push_back(StructureMap{0, {}});
    return out;
  }
  const bool star = validate(y, MembershipLevel::Star).valid;
  std::vector<int> alpha(m, 0);
  for (;;) {
    StructureMap sm{n, alpha};
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      Config<S> qj = nullary(x.space, x.domain);
      for (int i : sm.fiber(j)) qj.maps.push_back(invert(x[j]) * y[i]);
      ok = validate(qj, star ? MembershipLevel::Star : MembershipLevel::Ambient).valid;
    }
    if (ok) out.push_back(sm);
    int k = m - 1;
    while (k >= 0 && ++alpha[k] == n) alpha[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

template <class S>
void divisibility(Trial<S>& T) {
  const auto space = plain_space<S>(2);
  const auto dom = ProductBall<S>::unit(space->blocks);
  DiskParams p;
  p.max_rejections = rejection_limit;
  const auto [x, y] = T.need(random_star_pair(T.rng, space, dom, 3, p));
  T.record("x", x);
  T.record("y", y);
  T.command = "divide --x x --y y";
  const auto div = divides(x, y);
  const auto all = exhaustive_divisions(x, y);
  require(div.has_value() == !all.empty(), "divides agrees with exhaustive search",
          std::string("divides says ") + (div ? "yes" : "no") + ", exhaustive search found " + std::to_string(all.size()));
  if (div) {
    require(div->alpha.alpha == all.front().alpha, "least structure map");
    require(equal(operad_compose(x, div->alpha, div->quotients), y), "quotients recompose");
  }
}

template <class S>
void left_cancel_suite(Trial<S>& T) {
  auto& rng = T.rng;
  const auto space = plain_space<S>(2);
  const auto dom = ProductBall<S>::unit(space->blocks);
  const auto x = T.member(space, dom, uniform_int(rng, 1, 3), MembershipLevel::Star);
  StructureMap alpha{x.arity(), {}};
  for (int k = uniform_int(rng, 0, 4); k > 0; --k) alpha.alpha.push_back(uniform_int(rng, 0, x.arity() - 1));
  std::vector<Config<S>> q;
  for (int j = 0; j < x.arity(); ++j)
    q.push_back(T.member(space, dom, static_cast<int>(alpha.fiber(j).size()), MembershipLevel::Star));
  const auto y = operad_compose(x, alpha, q);
  T.record("x", x);
  T.record("y", y);
  std::string a;
  for (int k = 0; k < alpha.source(); ++k) a += (k ? "," : "") + std::to_string(alpha.alpha[k] + 1);
  T.command = "divide --x x --y y --alpha " + (a.empty() ? std::string("''") : a);
  // A second construction of the same y from the forced quotients must give them back.
  const auto forced = candidate_quotients(x, y, alpha);
  const auto back = left_cancel(x, y, alpha);
  require(back.has_value(), "left cancellation succeeds");
  for (int j = 0; j < x.arity(); ++j) {
    require(equal((*back)[j], q[j]), "quotients are unique", "quotient " + std::to_string(j) + " differs");
    require(equal(forced[j], q[j]), "forced quotients", "quotient " + std::to_string(j) + " differs");
  }
  require(equal(operad_compose(x, alpha, *back), y), "collision recomposes");
}

// -------------------------------------------------------------- disk bounds

template <class S>
void disk_bounds_suite(Trial<S>& T) {
  const int d = uniform_int(T.rng, 1, 3);
  const auto blocks = BlockStructure::spherical(d);
  const auto inst = random_critical_disks<S>(T.rng, blocks);
  const auto space = plain_space<S>(d);
  const auto B = ProductBall<S>::unit(blocks);
  T.record("x", single(space, B, inst.x));
  T.record("y", make_config(space, B, {inst.y1, inst.y2}));
  T.command = "partition --x x --y y";
  const Tolerance<S> exact{};
  const auto X = image(inst.x, B), Y1 = image(inst.y1, B), Y2 = image(inst.y2, B);
  require(ball_relations(X, Y1, exact).intersects && ball_relations(X, Y2, exact).intersects, "hypothesis: x meets y1 and y2");
  const auto big = ProductBall<S>::centered(blocks, {inst.lambda});
  require(disjoint(image(inst.y1, big), image(inst.y2, big), exact), "hypothesis: enlarged y1, y2 disjoint");
  // Independent distance arithmetic in double precision.
  auto dist = [&](const ProductBall<S>& a, const ProductBall<S>& b) {
    double s = 0;
    for (int k = 0; k < d; ++k) s += std::pow(to_double(a.center(k)) - to_double(b.center(k)), 2);
    return std::sqrt(s);
  };
  const double rx = to_double(X.radii[0]), r1 = to_double(Y1.radii[0]), r2 = to_double(Y2.radii[0]);
  const double lambda = to_double(inst.lambda);
  require(dist(X, Y1) < rx + r1 + 1e-12 && dist(X, Y2) < rx + r2 + 1e-12, "hypothesis (distances)");
  require(dist(Y1, Y2) >= lambda * (r1 + r2) - 1e-12, "hypothesis (enlarged distances)");

  const auto bounds = disk_bounds(inst.lambda, Y1.radii[0], Y2.radii[0]);
  require(X.radii[0] > bounds.lower_bound, "radius exceeds (lambda-1)/2 (r1+r2)",
          "radius " + format_scalar(X.radii[0]) + " <= bound " + format_scalar(bounds.lower_bound));
  require(rx > (lambda - 1) / 2 * (r1 + r2) - 1e-12, "radius bound (double)");
  const auto mu = ProductBall<S>::centered(blocks, {bounds.mu_threshold});
  require(contains(image(inst.y1, big), image(inst.x, mu), exact) && contains(image(inst.y2, big), image(inst.x, mu), exact),
          "containment at the threshold", "mu = " + format_scalar(bounds.mu_threshold));
  const double m = 4 / (lambda - 1) + 3;
  require(dist(X, Y1) + lambda * r1 <= m * rx + 1e-9 && dist(X, Y2) + lambda * r2 <= m * rx + 1e-9,
          "containment at the threshold (double)");
}

// ---------------------------------------------------------- bubble transfer

template <class S>
void bubble_transfer(Trial<S>& T) {
  const int d = uniform_int(T.rng, 1, 3);
  const auto space = plain_space<S>(d);
  const auto dom = ProductBall<S>::unit(space->blocks);
  std::optional<std::pair<Config<S>, Config<S>>> pair;
  for (int attempt = 0; attempt < rejection_limit && !pair; ++attempt)
    if (!(pair = random_separated_pair(T.rng, space, dom, 4))) ++T.rejections;
  const auto [x, y] = T.need(std::move(pair));
  T.record("x", x);
  T.record("y", y);
  T.command = "triangles --x x --y y";
  require(is_separated(x) && is_separated(y), "generated pair is separated");
  const auto t = triangle_decomposition(x, y);
  if (auto why = check_triangle(x, y, t)) require(false, "triangle equations", *why);
  const auto& tol = space->tol;
  // The same five equations, component by component on points.
  int slot = 0;
  for (int i = 0; i < x.arity(); ++i) {
    require(same_action(t.right[i] * t.mu_bar[i][0], x[i], tol), "x = right o mu_bar");
    for (const auto& m : t.mu[i].maps) require(same_action(t.right[i] * m, t.down[t.sigma_x[slot++]], tol), "down = sigma_x (right o mu)");
  }
  require(slot == t.down.arity(), "down = sigma_x (right o mu) (arity)");
  slot = 0;
  for (int j = 0; j < y.arity(); ++j) {
    require(same_action(t.left[j] * t.nu_bar[j][0], y[j], tol), "y = left o nu_bar");
    for (const auto& m : t.nu[j].maps) require(same_action(t.left[j] * m, t.down[t.sigma_y[slot++]], tol), "down = sigma_y (left o nu)");
  }
  require(slot == t.down.arity(), "down = sigma_y (left o nu) (arity)");
  for (const auto* c : {&t.right, &t.left, &t.down})
    require(validate(*c, MembershipLevel::Star).valid, "triangle elements are star");
}

// ------------------------------------------------------------------- tensor

template <class S>
struct Planes {
  SpacePtr<S> V = plain_space<S>(2), W = plain_space<S>(2);
  SpacePtr<S> VW = product_space(V, W);
  ProductBall<S> dv = ProductBall<S>::unit(V->blocks), dw = ProductBall<S>::unit(W->blocks);
};

template <class S>
void core_embedding(Trial<S>& T) {
  Planes<S> s;
  const auto k = random_core_form(T.rng, s.VW, s.dv, s.dw, 3, 3);
  const auto tree = core_tree(k);
  T.record("k", tree);
  const auto w = core_evaluate(k);
  T.record("w", w);
  T.command = "core-normalize --config w";
  if (auto why = core_form_problem(k)) require(false, "generated core form", *why);
  const auto shape = tree_validate(tree);
  require(shape.well_formed && shape.reduced && shape.height <= 2, "core tree is reduced of height at most two");
  require(equal(tree_evaluate(tree), w), "tree value is the core value");
  require(validate(w, MembershipLevel::Star).valid, "core value is star");
  const auto c = criticality(w);
  require(c.witness.has_value(), "core value is critical", c.reason);
  const auto k2 = core_normal_form(w, *c.witness);
  require(equal(core_evaluate(k2), w), "normal form evaluates back");
  if (auto why = core_equivalent(k, k2)) require(false, "normal form is the same tensor element", *why);
  const auto w2 = core_evaluate(k2);
  const auto c2 = criticality(w2);
  require(c2.witness.has_value(), "normal form value is critical", c2.reason);
  require(equal(core_normal_form(w2, *c2.witness), k2), "normal form is idempotent");
}

template <class S>
void interchange(Trial<S>& T) {
  Planes<S> s;
  auto& rng = T.rng;
  const auto t = random_tree(rng, s.VW, s.dv, s.dw);
  T.record("t", t);
  const auto report = tree_validate(t);
  require(report.well_formed && report.height <= 3, "generated tree");
  const auto value = tree_evaluate(t);
  const int v = uniform_int(rng, 0, static_cast<int>(t.vertices.size()) - 1);
  const auto order = uniform_int(rng, 0, 1) ? InterchangeOrder::WhiteFirst : InterchangeOrder::BlackFirst;
  const auto moved = interchange_move(t, v, order);
  T.record("moved", moved);
  T.command = "tree-eval --tree t && tree-eval --tree moved";
  require(tree_validate(moved).well_formed, "moved tree is well formed");
  require(equal(tree_evaluate(moved), value), "interchange move preserves the value",
          "vertex " + std::to_string(v) + (order == InterchangeOrder::WhiteFirst ? ", white first" : ", black first"));
  std::vector<Permutation> gw, gb, ge;
  for (const auto& x : t.vertices) {
    gw.push_back(random_permutation(rng, x.white));
    gb.push_back(random_permutation(rng, x.black));
    ge.push_back(random_permutation(rng, x.inputs()));
  }
  const auto iso = relabel(t, random_permutation(rng, static_cast<int>(t.vertices.size())), gw, gb, ge);
  require(equal(tree_evaluate(iso), value), "relabelling preserves the value");
}

template <class S>
void unary_iso_suite(Trial<S>& T) {
  Planes<S> s;
  const bool trivial_v = uniform_int(T.rng, 0, 9) == 0, trivial_w = uniform_int(T.rng, 0, 9) == 0;
  const auto p = trivial_v ? unit(s.V, s.dv) : T.member(s.V, s.dv, 1, MembershipLevel::Star);
  const auto q = trivial_w ? unit(s.W, s.dw) : T.member(s.W, s.dw, 1, MembershipLevel::Star);
  T.record("p", p);
  T.record("q", q);
  const auto tree = unary_iso(s.VW, p, q);
  T.record("t", tree);
  T.command = "tree-eval --tree t";
  require(tree.arity() == 1, "unary tree");
  require(tree.trivial() == (trivial_v && trivial_w), "identity goes to the trivial tree");
  const auto [p2, q2] = unary_iso_inverse(tree);
  require(equal(p2, p) && equal(q2, q), "inverse after forward is the identity");
  const auto tree2 = unary_iso(s.VW, p2, q2);
  require(interchange_equal(tree2, tree), "forward after inverse is the identity");
  const auto value = tree_evaluate(tree);
  require(same_action(value[0], product_map(s.VW, p[0], q[0]), s.VW->tol), "value is p x q");
}

// -------------------------------------------------------------------- flows

// The target predicate at time t, on squared quantities with no tolerance.
template <class S>
bool target_oracle(const Config<S>& x, FlowKind kind, const ProductBall<S>& inner, const ProductBall<S>& outer,
                   const S& t) {
  const auto& blocks = *x.space->blocks;
  const S u = 1 - t;
  const bool left = kind == FlowKind::ShrinkLeft;
  const int n = x.arity();
  auto block_vec = [&](const DilationMap<S>& f, int k) {
    std::vector<S> c;
    for (int a : blocks.coarse(k)) c.push_back(f.translation(a));
    return c;
  };
  auto norm2 = [](const std::vector<S>& v) {
    S s = 0;
    for (const auto& e : v) s += e * e;
    return s;
  };
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < blocks.coarse_count(); ++k) {
      const auto c = block_vec(x[i], k);
      // left: image of B under (1-t) x_i is B((1-t)c, (1-t) s R); right: B(c, (1-t) s R').
      const S R = left ? inner.radii[k] : outer.radii[k];
      const S r = u * x[i].scales[k] * R;
      const S c2 = left ? u * u * norm2(c) : norm2(c);
      if (r > R || c2 > (R - r) * (R - r)) return false;
    }
  if (left) return true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool apart = false;
      for (int k = 0; k < blocks.coarse_count() && !apart; ++k) {
        auto ci = block_vec(x[i], k), cj = block_vec(x[j], k);
        for (std::size_t a = 0; a < ci.size(); ++a) ci[a] -= cj[a];
        const S reach = u * (x[i].scales[k] + x[j].scales[k]) * outer.radii[k];
        apart = norm2(ci) >= reach * reach;
      }
      if (!apart) return false;
    }
  return true;
}

// Unit vectors with rational coordinates.
template <class S>
Vec<S> rational_direction(Rng& rng, int d) {
  static const int triples[][3] = {{1, 0, 1}, {3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}, {20, 21, 29}};
  Vec<S> u = Vec<S>::Zero(d);
  if (d == 1) {
    u(0) = uniform_int(rng, 0, 1) ? 1 : -1;
    return u;
  }
  const auto& t = triples[uniform_int(rng, 0, 5)];
  const int a = uniform_int(rng, 0, d - 1), b = (a + uniform_int(rng, 1, d - 1)) % d;
  u(a) = S(t[0] * (uniform_int(rng, 0, 1) ? 1 : -1)) / S(t[2]);
  u(b) = S(t[1] * (uniform_int(rng, 0, 1) ? 1 : -1)) / S(t[2]);
  return u;
}

// Star configuration whose centres lie on one line through the origin per
// coarse block, so that every distance is rational.
template <class S>
Config<S> collinear_member(Trial<S>& T, const SpacePtr<S>& space, const ProductBall<S>& domain, int arity) {
  auto& rng = T.rng;
  const auto& blocks = space->blocks;
  const int nb = blocks->coarse_count();
  std::vector<Vec<S>> dirs;
  for (int k = 0; k < nb; ++k) dirs.push_back(rational_direction<S>(rng, static_cast<int>(blocks->coarse(k).size())));
  for (int attempt = 0; attempt < rejection_limit; ++attempt) {
    std::vector<DilationMap<S>> maps;
    for (int i = 0; i < arity; ++i) {
      std::vector<S> scales;
      Vec<S> t = Vec<S>::Zero(blocks->dimension());
      for (int k = 0; k < nb; ++k) {
        const S R = domain.radii[k];
        const S lam = quantize<S>(uniform(rng, -0.8, 0.8), 256) * R;
        scales.push_back(quantize<S>(log_uniform(rng, 0.02, 0.3), 256) + S(1) / S(256));
        const auto& axes = blocks->coarse(k);
        for (std::size_t a = 0; a < axes.size(); ++a) t(axes[a]) = lam * dirs[k](static_cast<Eigen::Index>(a));
      }
      auto f = DilationMap<S>::dilation(blocks, scales, t);
      f.ortho = random_ortho<S>(rng, *blocks);
      maps.push_back(f);
    }
    auto x = make_config(space, domain, maps);
    if (validate(x, MembershipLevel::Star).valid) return x;
    ++T.rejections;
  }
  throw Starved{};
}

template <class S>
void flows(Trial<S>& T) {
  auto& rng = T.rng;
  const auto kind = std::array{FlowKind::ShrinkLeft, FlowKind::ShrinkRight, FlowKind::ShrinkRightProduct}[uniform_int(rng, 0, 2)];
  const int d = uniform_int(rng, 1, 3);
  const auto space = kind == FlowKind::ShrinkRightProduct ? product_space(plain_space<S>(d), plain_space<S>(uniform_int(rng, 1, 3)))
                                                          : plain_space<S>(d);
  const int nb = space->blocks->coarse_count();
  std::vector<S> r_in, r_out;
  for (int k = 0; k < nb; ++k) {
    r_in.push_back(quantize<S>(uniform(rng, 0.3, 0.9), 64));
    r_out.push_back(kind == FlowKind::ShrinkLeft ? S(1) : r_in.back() * quantize<S>(uniform(rng, 1.1, 3), 64));
  }
  const auto inner = ProductBall<S>::centered(space->blocks, r_in);
  const auto outer = ProductBall<S>::centered(space->blocks, r_out);
  const auto& home = kind == FlowKind::ShrinkLeft ? outer : inner;
  const int arity = uniform_int(rng, 1, 4);
  DiskParams p;
  p.radius_hi = 0.3;
  const auto x = is_exact_v<S> ? collinear_member(T, space, home, arity) : T.member(space, home, arity, MembershipLevel::Star, p);
  T.record("x", x);
  T.record("inner", nullary(space, inner));
  T.record("outer", nullary(space, outer));
  T.command = std::string("entry-time --config x --kind ") + flow_name(kind) + " --inner <domain of inner> --outer <domain of outer>";

  const auto report = entry_time(x, kind, inner, outer);
  const S t = report.t;
  // Doubles are probed just past t to absorb the rounding of the closed form.
  const S probe = is_exact_v<S> ? t : S(t + S(1e-12));
  require(target_oracle(x, kind, inner, outer, probe), "flow is in the target at the entry time", "t = " + format_scalar(t));
  if (target_oracle(x, kind, inner, outer, S(0))) {
    require(t == 0 || (!is_exact_v<S> && t < S(1e-12)), "entry time is zero when x starts in the target");
  } else {
    // Bisection on the oracle predicate.
    S lo = 0, hi = S(1) - S(1) / S(1L << 40);
    require(target_oracle(x, kind, inner, outer, hi), "target is reached before t = 1");
    for (int step = 0; step < 64; ++step) {
      const S mid = (lo + hi) / 2;
      (target_oracle(x, kind, inner, outer, mid) ? hi : lo) = mid;
    }
    if constexpr (is_exact_v<S>)
      require(lo < t && t <= hi, "entry time matches bisection exactly",
              "t = " + format_scalar(t) + " outside (" + format_scalar(lo) + ", " + format_scalar(hi) + "]");
    else
      require(std::abs(t - hi) <= 1e-12, "entry time matches bisection within 1e-12",
              "t = " + format_scalar(t) + ", bisection " + format_scalar(hi));
  }
  // Forward invariance on a few later times.
  for (int k = 1; k <= 3; ++k)
    require(target_oracle(x, kind, inner, outer, t + (1 - t) * S(k) / S(4)), "target is forward invariant");

  // Semigroup law.
  const S a = quantize<S>(uniform(rng, 0, 0.95), 64), b = quantize<S>(uniform(rng, 0, 0.95), 64);
  require(equal(flow_apply(flow_apply(x, kind, a), kind, b), flow_apply(x, kind, S(1) - (1 - a) * (1 - b))), "semigroup law",
          "s = " + format_scalar(a) + ", u = " + format_scalar(b));

  // Spherical rescaling on an axial space lands in equal-scale form.
  const auto axial = make_space<S>(BlockStructure::axial(3), trivial_group<S>(*BlockStructure::axial(3)));
  const auto dom = ProductBall<S>::unit(axial->blocks);
  const auto z = random_config<S>(rng, axial, dom, uniform_int(rng, 1, 4));
  const auto rs = spherical_rescale(z);
  for (int i = 0; i < z.arity(); ++i) {
    const auto& f = rs.retracted[i];
    const auto& tol = axial->tol;
    require(tol.eq(f.scales[0], f.scales[1]) && tol.eq(f.scales[1], f.scales[2]), "spherical rescale gives equal scales");
    Mat<S> lambda = Mat<S>::Zero(3, 3);
    for (int a2 = 0; a2 < 3; ++a2) lambda(a2, a2) = rs.lambda[i][a2];
    for (int a2 = 0; a2 < 3; ++a2) {
      Vec<S> e = Vec<S>::Zero(3);
      e(a2) = 1;
      require(approx_equal(f.apply(e), z[i].apply(Vec<S>(lambda * e)), axial->tol), "rescaled map is x_i o diag(lambda)");
    }
  }
}

template <class S>
using SuiteFn = void (*)(Trial<S>&);

template <class S>
const std::map<std::string, SuiteFn<S>>& suite_table() {
  static const std::map<std::string, SuiteFn<S>> table{
      {"operad-laws", &operad_laws<S>},       {"divisibility", &divisibility<S>},
      {"left-cancel", &left_cancel_suite<S>}, {"disk-bounds", &disk_bounds_suite<S>},
      {"bubble-transfer", &bubble_transfer<S>}, {"core-embedding", &core_embedding<S>},
      {"interchange", &interchange<S>},       {"unary-iso", &unary_iso_suite<S>},
      {"flows", &flows<S>}};
  return table;
}

struct Outcome {
  bool ran = false;
  bool starved = false;
  long rejections = 0;
  std::optional<Counterexample> failure;
};

template <class S>
Outcome run_trial(SuiteFn<S> fn, std::uint64_t seed, int index) {
  Trial<S> T;
  T.rng.seed(seed);
  Outcome out;
  auto fail = [&](const std::string& check, const std::string& message) {
    Counterexample c{index, seed, check, message, "", T.command};
    try {
      c.scene = serialize_scene(scene_fragment(T.configs, T.trees));
    } catch (const std::exception& e) {
      c.scene = std::string("{\"error\": ") + json(e.what()).dump() + "}";
    }
    out.failure = std::move(c);
  };
  try {
    fn(T);
    out.ran = true;
  } catch (const Starved&) {
    out.starved = true;
  } catch (const CheckFailed& f) {
    out.ran = true;
    fail(f.check, f.message);
  } catch (const std::exception& e) {
    out.ran = true;
    fail("no exception", e.what());
  }
  out.rejections = T.rejections;
  return out;
}

}  // namespace

int VerifyReport::failures() const {
  int n = 0;
  for (const auto& s : suites) n += s.failures;
  return n;
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"operad-laws", "divisibility",   "left-cancel", "disk-bounds", "bubble-transfer",
                                              "core-embedding", "interchange", "unary-iso",   "flows"};
  return names;
}

std::vector<std::string> parse_suite_selection(const std::string& text) {
  if (text == "all") return verify_suite_names();
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const auto name = text.substr(start, end - start);
    const auto& all = verify_suite_names();
    if (std::find(all.begin(), all.end(), name) == all.end()) {
      std::string known;
      for (const auto& n : all) known += (known.empty() ? "" : ", ") + n;
      throw UsageError("unknown suite '" + name + "' (all, " + known + ")");
    }
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    start = end + 1;
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, const std::string& suite, int trial) {
  return splitmix(splitmix(seed ^ fnv1a(suite)) + static_cast<std::uint64_t>(trial));
}

template <class Scalar>
VerifyReport verify_suite(std::uint64_t seed, int trials, const std::vector<std::string>& suites,
                          const VerifyOptions& options) {
  if (trials < 1) throw UsageError("--trials must be at least 1");
  VerifyReport report{seed, scalar_traits<Scalar>::mode, trials, {}};
  const int threads = std::max(1, options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency()));
  for (const auto& name : suites) {
    const auto it = suite_table<Scalar>().find(name);
    if (it == suite_table<Scalar>().end()) throw UsageError("unknown suite '" + name + "'");
    const auto fn = it->second;
    std::vector<int> indices;
    if (options.only_trial) indices.push_back(*options.only_trial);
    else
      for (int i = 0; i < trials; ++i) indices.push_back(i);
    std::vector<Outcome> outcomes(indices.size());
    const auto start = std::chrono::steady_clock::now();
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t k = next++; k < indices.size(); k = next++)
        outcomes[k] = run_trial<Scalar>(fn, trial_seed(seed, name, indices[k]), indices[k]);
    };
    if (threads == 1) work();
    else {
      std::vector<std::jthread> pool;
      for (int w = 0; w < std::min<int>(threads, static_cast<int>(indices.size())); ++w) pool.emplace_back(work);
    }
    SuiteReport s;
    s.name = name;
    for (auto& o : outcomes) {
      s.trials += o.ran;
      s.starved += o.starved;
      s.rejections += o.rejections;
      if (o.failure) {
        ++s.failures;
        if (!s.counterexample) s.counterexample = std::move(o.failure);
      }
    }
    s.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.suites.push_back(std::move(s));
  }
  return report;
}

std::string report_json(const VerifyReport& r, bool timing) {
  json suites = json::array();
  for (const auto& s : r.suites) {
    json j{{"name", s.name},
           {"trials", s.trials},
           {"failures", s.failures},
           {"rejections", s.rejections},
           {"starved", s.starved},
           {"counterexample", nullptr}};
    if (s.counterexample) {
      const auto& c = *s.counterexample;
      json scene;
      try {
        scene = json::parse(c.scene);
      } catch (const json::parse_error&) {
        scene = c.scene;
      }
      j["counterexample"] = json{{"trial", c.trial},   {"trial_seed", std::to_string(c.trial_seed)},
                                 {"check", c.check},   {"message", c.message},
                                 {"scene", scene},     {"command", c.command},
                                 {"replay", "verify --suite " + s.name + " --seed " + std::to_string(r.seed) +
                                                " --trial " + std::to_string(c.trial)}};
    }
    if (timing) j["elapsed_seconds"] = s.elapsed;
    suites.push_back(j);
  }
  json j{{"seed", std::to_string(r.seed)},
         {"numeric", r.mode == NumericMode::Exact ? "exact" : "float"},
         {"trials", r.trials},
         {"failures", r.failures()},
         {"suites", suites}};
  return j.dump(2) + "\n";
}

template VerifyReport verify_suite<double>(std::uint64_t, int, const std::vector<std::string>&, const VerifyOptions&);
template VerifyReport verify_suite<Rational>(std::uint64_t, int, const std::vector<std::string>&, const VerifyOptions&);

}  // namespace diskop
