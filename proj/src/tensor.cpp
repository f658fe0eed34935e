#include "diskop/tensor.hpp"

#include "diskop/error.hpp"

#include <functional>

namespace diskop {

namespace {

template <class Scalar>
void require_product(const SpacePtr<Scalar>& vw) {
  if (!vw || !vw->is_product()) throw DomainError("expected a product space V x W");
}

template <class Scalar>
const SpacePtr<Scalar>& factor_space(const SpacePtr<Scalar>& vw, Factor side) {
  return side == Factor::V ? vw->first : vw->second;
}

}  // namespace

template <class Scalar>
DilationMap<Scalar> product_map(const SpacePtr<Scalar>& vw, const DilationMap<Scalar>& f,
                                const DilationMap<Scalar>& g) {
  require_product(vw);
  if (f.dimension() != vw->first->dimension() || g.dimension() != vw->second->dimension())
    throw DomainError("product map: factor dimensions do not match the product space");
  DilationMap<Scalar> h;
  h.blocks = vw->blocks;
  h.ortho = direct_sum(f.ortho, g.ortho);
  h.scales = f.scales;
  h.scales.insert(h.scales.end(), g.scales.begin(), g.scales.end());
  h.translation.resize(vw->dimension());
  h.translation << f.translation, g.translation;
  return h;
}

template <class Scalar>
DilationMap<Scalar> project_map(const SpacePtr<Scalar>& vw, const DilationMap<Scalar>& h, Factor side) {
  require_product(vw);
  const auto& sub = factor_space(vw, side);
  const int dv = vw->first->dimension();
  const int d = sub->dimension();
  const int offset = side == Factor::V ? 0 : dv;
  const int coarse_offset = side == Factor::V ? 0 : vw->first->blocks->coarse_count();
  DilationMap<Scalar> f;
  f.blocks = sub->blocks;
  f.ortho = h.ortho.block(offset, offset, d, d);
  f.scales.assign(h.scales.begin() + coarse_offset, h.scales.begin() + coarse_offset + sub->blocks->coarse_count());
  f.translation = h.translation.segment(offset, d);
  return f;
}

template <class Scalar>
ProductBall<Scalar> product_ball(const SpacePtr<Scalar>& vw, const ProductBall<Scalar>& a,
                                 const ProductBall<Scalar>& b) {
  require_product(vw);
  ProductBall<Scalar> out;
  out.blocks = vw->blocks;
  out.center.resize(vw->dimension());
  out.center << a.center, b.center;
  out.radii = a.radii;
  out.radii.insert(out.radii.end(), b.radii.begin(), b.radii.end());
  return out;
}

template <class Scalar>
ProductBall<Scalar> project_ball(const SpacePtr<Scalar>& vw, const ProductBall<Scalar>& b, Factor side) {
  require_product(vw);
  const auto& sub = factor_space(vw, side);
  const int offset = side == Factor::V ? 0 : vw->first->dimension();
  const int coarse_offset = side == Factor::V ? 0 : vw->first->blocks->coarse_count();
  ProductBall<Scalar> out;
  out.blocks = sub->blocks;
  out.center = b.center.segment(offset, sub->dimension());
  out.radii.assign(b.radii.begin() + coarse_offset, b.radii.begin() + coarse_offset + sub->blocks->coarse_count());
  return out;
}

template <class Scalar>
Config<Scalar> project(const Config<Scalar>& w, Factor side) {
  require_product(w.space);
  Config<Scalar> out = nullary(factor_space(w.space, side), project_ball(w.space, w.domain, side));
  for (const auto& h : w.maps) out.maps.push_back(project_map(w.space, h, side));
  return out;
}

template <class Scalar>
Config<Scalar> embed(const SpacePtr<Scalar>& vw, const Config<Scalar>& x, const ProductBall<Scalar>& other_domain,
                     Factor side) {
  require_product(vw);
  const auto& other = factor_space(vw, side == Factor::V ? Factor::W : Factor::V);
  const auto id = DilationMap<Scalar>::identity(other->blocks);
  const auto domain = side == Factor::V ? product_ball(vw, x.domain, other_domain) : product_ball(vw, other_domain, x.domain);
  Config<Scalar> out = nullary(vw, domain);
  for (const auto& f : x.maps) out.maps.push_back(side == Factor::V ? product_map(vw, f, id) : product_map(vw, id, f));
  return out;
}

template <class Scalar>
Config<Scalar> simple_tensor(const SpacePtr<Scalar>& vw, const Config<Scalar>& p, const Config<Scalar>& q) {
  Config<Scalar> out = nullary(vw, product_ball(vw, p.domain, q.domain));
  for (const auto& f : p.maps)
    for (const auto& g : q.maps) out.maps.push_back(product_map(vw, f, g));
  return out;
}

Permutation tau(int m, int n) {
  Permutation t(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) t[i * n + j] = j * m + i;
  return t;
}

template <class Scalar>
int SuperTree<Scalar>::arity() const {
  if (trivial()) return 1;
  int n = 0;
  for (const auto& v : vertices)
    for (const auto& e : v.edges) n += e.is_input();
  return n;
}

template <class Scalar>
TreeReport tree_validate(const SuperTree<Scalar>& t) {
  TreeReport r;
  auto problem = [&](std::string s) { r.problems.push_back(std::move(s)); };
  const int nv = static_cast<int>(t.vertices.size());
  if (t.trivial()) {
    if (nv != 0) problem("trivial tree (root -1) has vertices");
    r.well_formed = r.problems.empty();
    r.reduced = r.proper = r.core = r.well_formed;
    return r;
  }
  if (t.root >= nv) {
    problem("root " + std::to_string(t.root) + " out of range");
    return r;
  }
  if (!t.space || !t.space->is_product()) problem("tree space is not a product space");
  std::vector<int> parents(nv, 0), inputs;
  for (int v = 0; v < nv; ++v) {
    const auto& x = t.vertices[v];
    const std::string at = "vertex " + std::to_string(v) + ": ";
    const int n = x.white * x.black;
    if (x.white < 0 || x.black < 0) problem(at + "negative label count");
    if (x.inputs() != n)
      problem(at + std::to_string(x.inputs()) + " incoming edges but " + std::to_string(x.white) + "x" +
              std::to_string(x.black) + " labels");
    if (static_cast<int>(x.xi.size()) != n || !is_permutation(x.xi)) problem(at + "xi is not a bijection onto In(v)");
    if (x.p.arity() != x.white) problem(at + "white decoration has arity " + std::to_string(x.p.arity()));
    if (x.q.arity() != x.black) problem(at + "black decoration has arity " + std::to_string(x.q.arity()));
    if (t.space && t.space->is_product()) {
      if (!x.p.space || !same_blocks(x.p.space->blocks, t.space->first->blocks) ||
          !equal(x.p.domain, t.v_domain, t.space->tol))
        problem(at + "white decoration is not over B_V");
      if (!x.q.space || !same_blocks(x.q.space->blocks, t.space->second->blocks) ||
          !equal(x.q.domain, t.w_domain, t.space->tol))
        problem(at + "black decoration is not over B_W");
    }
    for (std::size_t e = 0; e < x.edges.size(); ++e) {
      const auto& edge = x.edges[e];
      if (edge.is_input()) {
        inputs.push_back(edge.input);
      } else if (edge.child >= nv) {
        problem(at + "edge " + std::to_string(e) + " points to missing vertex");
      } else {
        ++parents[edge.child];
      }
    }
  }
  for (int v = 0; v < nv; ++v) {
    const int want = v == t.root ? 0 : 1;
    if (parents[v] != want)
      problem("vertex " + std::to_string(v) + " has " + std::to_string(parents[v]) + " parents, expected " +
              std::to_string(want));
  }
  if (!is_permutation(inputs)) problem("tree input labels are not a bijection onto 0..n-1");
  if (!r.problems.empty()) return r;

  // Parent counts are right, so reachability from the root rules out cycles.
  std::vector<int> depth(nv, -1);
  std::vector<int> stack{t.root};
  depth[t.root] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    r.height = std::max(r.height, depth[v]);
    for (const auto& e : t.vertices[v].edges)
      if (!e.is_input()) {
        depth[e.child] = depth[v] + 1;
        stack.push_back(e.child);
      }
  }
  for (int v = 0; v < nv; ++v)
    if (depth[v] < 0) problem("vertex " + std::to_string(v) + " is not reachable from the root");
  if (!r.problems.empty()) return r;
  r.well_formed = true;

  // An input edge carries a tree input, so it does not end in a stump.
  auto leads_somewhere = [&](const TreeEdge& e) { return e.is_input() || t.vertices[e.child].inputs() > 0; };
  r.reduced = true;
  for (int v = 0; v < nv && r.reduced; ++v) {
    const auto& x = t.vertices[v];
    if (x.inputs() == 0) continue;
    for (int i = 0; i < x.white && r.reduced; ++i) {
      bool ok = false;
      for (int j = 0; j < x.black; ++j) ok = ok || leads_somewhere(x.edges[x.xi[i * x.black + j]]);
      r.reduced = ok;
    }
    for (int j = 0; j < x.black && r.reduced; ++j) {
      bool ok = false;
      for (int i = 0; i < x.white; ++i) ok = ok || leads_somewhere(x.edges[x.xi[i * x.black + j]]);
      r.reduced = ok;
    }
  }
  r.proper = r.reduced;
  for (const auto& x : t.vertices)
    if (x.inputs() == 1 && !x.edges[0].is_input()) r.proper = false;
  r.core = r.proper && r.height <= 2;
  return r;
}

template <class Scalar>
Config<Scalar> tree_evaluate(const SuperTree<Scalar>& t) {
  const auto report = tree_validate(t);
  if (!report.well_formed)
    throw DomainError("tree evaluate: malformed tree (" + (report.problems.empty() ? "" : report.problems.front()) + ")");
  const auto domain = product_ball(t.space, t.v_domain, t.w_domain);
  if (t.trivial()) return unit(t.space, domain);
  std::vector<int> labels;  // input label of each leaf in evaluation order
  std::function<Config<Scalar>(int)> eval = [&](int v) {
    const auto& x = t.vertices[v];
    Config<Scalar> top = nullary(t.space, domain);
    top.maps.resize(x.inputs());
    for (int i = 0; i < x.white; ++i)
      for (int j = 0; j < x.black; ++j) top.maps[x.xi[i * x.black + j]] = product_map(t.space, x.p.maps[i], x.q.maps[j]);
    std::vector<Config<Scalar>> below;
    for (const auto& e : x.edges) {
      if (e.is_input()) {
        labels.push_back(e.input);
        below.push_back(unit(t.space, domain));
      } else {
        below.push_back(eval(e.child));
      }
    }
    return compose(top, below);
  };
  const auto value = eval(t.root);
  return act(labels, t.space->group.identity, value);
}

template <class Scalar>
bool interchange_equal(const SuperTree<Scalar>& a, const SuperTree<Scalar>& b) {
  if (a.arity() != b.arity()) throw DomainError("interchange: trees have different arities");
  return equal(tree_evaluate(a), tree_evaluate(b));
}

template <class Scalar>
SuperTree<Scalar> interchange_move(const SuperTree<Scalar>& t, int v, InterchangeOrder order) {
  if (v < 0 || v >= static_cast<int>(t.vertices.size())) throw DomainError("interchange move: no such vertex");
  SuperTree<Scalar> out = t;
  const auto x = t.vertices[v];
  const auto& V = t.space->first;
  const auto& W = t.space->second;
  const auto idV = unit(V, t.v_domain), idW = unit(W, t.w_domain);
  const bool white_first = order == InterchangeOrder::WhiteFirst;
  const int outer = white_first ? x.white : x.black;
  const int inner = white_first ? x.black : x.white;

  TreeVertex<Scalar> top;
  top.white = white_first ? x.white : 1;
  top.black = white_first ? 1 : x.black;
  top.p = white_first ? x.p : idV;
  top.q = white_first ? idW : x.q;
  top.xi = identity_permutation(outer);
  for (int a = 0; a < outer; ++a) {
    TreeVertex<Scalar> child;
    child.white = white_first ? 1 : x.white;
    child.black = white_first ? x.black : 1;
    child.p = white_first ? idV : x.p;
    child.q = white_first ? x.q : idW;
    child.xi = identity_permutation(inner);
    for (int b = 0; b < inner; ++b) {
      const int i = white_first ? a : b, j = white_first ? b : a;
      child.edges.push_back(x.edges[x.xi[i * x.black + j]]);
    }
    top.edges.push_back(TreeEdge{static_cast<int>(out.vertices.size()), -1});
    out.vertices.push_back(std::move(child));
  }
  out.vertices[v] = std::move(top);
  return out;
}

template <class Scalar>
SuperTree<Scalar> relabel(const SuperTree<Scalar>& t, const Permutation& vertex_perm,
                          const std::vector<Permutation>& white_perms, const std::vector<Permutation>& black_perms,
                          const std::vector<Permutation>& edge_perms) {
  const int nv = static_cast<int>(t.vertices.size());
  if (static_cast<int>(vertex_perm.size()) != nv || !is_permutation(vertex_perm))
    throw DomainError("relabel: vertex permutation has the wrong size");
  SuperTree<Scalar> out = t;
  out.root = t.trivial() ? -1 : vertex_perm[t.root];
  const int e = t.space->group.identity;
  for (int v = 0; v < nv; ++v) {
    const auto& x = t.vertices[v];
    const auto& gw = white_perms[v];
    const auto& gb = black_perms[v];
    const auto& ge = edge_perms[v];
    if (static_cast<int>(gw.size()) != x.white || static_cast<int>(gb.size()) != x.black ||
        static_cast<int>(ge.size()) != x.inputs())
      throw DomainError("relabel: label permutation has the wrong size at vertex " + std::to_string(v));
    TreeVertex<Scalar> y;
    y.white = x.white;
    y.black = x.black;
    y.p = act(gw, e, x.p);
    y.q = act(gb, e, x.q);
    y.edges.resize(x.inputs());
    for (int k = 0; k < x.inputs(); ++k) {
      TreeEdge edge = x.edges[k];
      if (!edge.is_input()) edge.child = vertex_perm[edge.child];
      y.edges[ge[k]] = edge;
    }
    y.xi.resize(x.xi.size());
    for (int i = 0; i < x.white; ++i)
      for (int j = 0; j < x.black; ++j) y.xi[gw[i] * x.black + gb[j]] = ge[x.xi[i * x.black + j]];
    out.vertices[vertex_perm[v]] = std::move(y);
  }
  return out;
}

template <class Scalar>
SuperTree<Scalar> corolla(const SpacePtr<Scalar>& vw, const Config<Scalar>& p, const Config<Scalar>& q) {
  require_product(vw);
  SuperTree<Scalar> t;
  t.space = vw;
  t.v_domain = p.domain;
  t.w_domain = q.domain;
  TreeVertex<Scalar> x;
  x.white = p.arity();
  x.black = q.arity();
  x.p = p;
  x.q = q;
  const int n = x.white * x.black;
  x.xi = identity_permutation(n);
  for (int k = 0; k < n; ++k) x.edges.push_back(TreeEdge{-1, k});
  t.vertices.push_back(std::move(x));
  t.root = 0;
  return t;
}

template <class Scalar>
SuperTree<Scalar> unary_iso(const SpacePtr<Scalar>& vw, const Config<Scalar>& p, const Config<Scalar>& q) {
  if (p.arity() != 1 || q.arity() != 1) throw DomainError("unary iso: both factors must have arity 1");
  if (equal(p, unit(p.space, p.domain)) && equal(q, unit(q.space, q.domain))) {
    SuperTree<Scalar> t;
    t.space = vw;
    t.v_domain = p.domain;
    t.w_domain = q.domain;
    return t;
  }
  return corolla(vw, p, q);
}

template <class Scalar>
std::pair<Config<Scalar>, Config<Scalar>> unary_iso_inverse(const SuperTree<Scalar>& t) {
  if (t.arity() != 1) throw DomainError("unary iso: tree must have exactly one input");
  const auto w = tree_evaluate(t);
  return {project(w, Factor::V), project(w, Factor::W)};
}

template <class Scalar>
SuperTree<Scalar> random_tree(Rng& rng, const SpacePtr<Scalar>& vw, const ProductBall<Scalar>& v_domain,
                              const ProductBall<Scalar>& w_domain, const TreeParams& p) {
  require_product(vw);
  SuperTree<Scalar> t;
  t.space = vw;
  t.v_domain = v_domain;
  t.w_domain = w_domain;
  DiskParams disks;
  disks.radius_hi = 0.4;
  auto decoration = [&](const SpacePtr<Scalar>& space, const ProductBall<Scalar>& domain, int arity) {
    auto x = random_member(rng, space, domain, arity, MembershipLevel::Star, disks);
    if (!x) throw InvariantError("random tree: decoration generator starved");
    return *x;
  };
  int next_input = 0;
  std::function<int(int)> grow = [&](int height) {
    const int id = static_cast<int>(t.vertices.size());
    t.vertices.emplace_back();
    TreeVertex<Scalar> x;
    const bool stump = id != 0 && uniform(rng, 0, 1) < p.stump_chance;
    x.white = stump ? uniform_int(rng, 0, 1) : uniform_int(rng, 1, p.max_labels);
    x.black = stump && x.white == 1 ? 0 : stump ? uniform_int(rng, 0, 1) : uniform_int(rng, 1, p.max_labels);
    x.p = decoration(vw->first, v_domain, x.white);
    x.q = decoration(vw->second, w_domain, x.black);
    const int n = x.white * x.black;
    x.xi = random_permutation(rng, n);
    for (int k = 0; k < n; ++k) {
      if (height >= p.max_height || uniform(rng, 0, 1) < p.input_bias) {
        x.edges.push_back(TreeEdge{-1, next_input++});
      } else {
        x.edges.push_back(TreeEdge{grow(height + 1), -1});
      }
    }
    t.vertices[id] = std::move(x);
    return id;
  };
  t.root = grow(1);
  // Shuffle the input labels so evaluation order and labels disagree.
  const auto shuffle = random_permutation(rng, next_input);
  for (auto& x : t.vertices)
    for (auto& e : x.edges)
      if (e.is_input()) e.input = shuffle[e.input];
  return t;
}

#define DISKOP_INSTANTIATE(S)                                                                                   \
  template DilationMap<S> product_map(const SpacePtr<S>&, const DilationMap<S>&, const DilationMap<S>&);        \
  template DilationMap<S> project_map(const SpacePtr<S>&, const DilationMap<S>&, Factor);                      \
  template ProductBall<S> product_ball(const SpacePtr<S>&, const ProductBall<S>&, const ProductBall<S>&);       \
  template ProductBall<S> project_ball(const SpacePtr<S>&, const ProductBall<S>&, Factor);                     \
  template Config<S> project(const Config<S>&, Factor);                                                        \
  template Config<S> embed(const SpacePtr<S>&, const Config<S>&, const ProductBall<S>&, Factor);                \
  template Config<S> simple_tensor(const SpacePtr<S>&, const Config<S>&, const Config<S>&);                     \
  template struct SuperTree<S>;                                                                                 \
  template TreeReport tree_validate(const SuperTree<S>&);                                                       \
  template Config<S> tree_evaluate(const SuperTree<S>&);                                                        \
  template bool interchange_equal(const SuperTree<S>&, const SuperTree<S>&);                                    \
  template SuperTree<S> interchange_move(const SuperTree<S>&, int, InterchangeOrder);                           \
  template SuperTree<S> relabel(const SuperTree<S>&, const Permutation&, const std::vector<Permutation>&,       \
                                const std::vector<Permutation>&, const std::vector<Permutation>&);              \
  template SuperTree<S> corolla(const SpacePtr<S>&, const Config<S>&, const Config<S>&);                        \
  template SuperTree<S> unary_iso(const SpacePtr<S>&, const Config<S>&, const Config<S>&);                      \
  template std::pair<Config<S>, Config<S>> unary_iso_inverse(const SuperTree<S>&);                              \
  template SuperTree<S> random_tree(Rng&, const SpacePtr<S>&, const ProductBall<S>&, const ProductBall<S>&,     \
                                    const TreeParams&);

DISKOP_INSTANTIATE(double)
DISKOP_INSTANTIATE(Rational)

}  // namespace diskop
