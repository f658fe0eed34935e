#include "diskop/core.hpp"

#include "diskop/divisibility.hpp"
#include "diskop/error.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace diskop {

namespace {

std::string set_text(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k] + 1);
  return s + "}";
}

template <class Scalar>
Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  Scalar s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

template <class Scalar>
std::vector<Scalar> minus(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  std::vector<Scalar> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
  return out;
}

// Gaussian elimination on a small dense system; nothing if singular.
template <class Scalar>
std::optional<std::vector<Scalar>> solve(std::vector<std::vector<Scalar>> m, std::vector<Scalar> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (pivot < 0 || scalar_abs(m[r][col]) > scalar_abs(m[pivot][col])) pivot = r;
    if (pivot < 0 || scalar_abs(m[pivot][col]) <= Scalar(is_exact_v<Scalar> ? 0 : 1e-12)) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Scalar f = m[r][col] / m[col][col];
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int r = 0; r < n; ++r) rhs[r] /= m[r][r];
  return rhs;
}

// Point of equal power with respect to the chosen balls, in the affine hull of their centres.
template <class Scalar>
std::optional<std::vector<Scalar>> equal_power_point(const std::vector<std::vector<Scalar>>& c,
                                                     const std::vector<Scalar>& r, const std::vector<int>& subset) {
  const auto& c0 = c[subset[0]];
  const int m = static_cast<int>(subset.size()) - 1;
  if (m == 0) return c0;
  std::vector<std::vector<Scalar>> diff;
  for (int a = 1; a <= m; ++a) diff.push_back(minus(c[subset[a]], c0));
  std::vector<std::vector<Scalar>> M(m, std::vector<Scalar>(m));
  std::vector<Scalar> rhs(m);
  const Scalar r0 = r[subset[0]];
  for (int b = 0; b < m; ++b) {
    const auto& cb = c[subset[b + 1]];
    const Scalar rb = r[subset[b + 1]];
    for (int a = 0; a < m; ++a) M[b][a] = 2 * dot(diff[b], diff[a]);
    rhs[b] = dot(cb, cb) - dot(c0, c0) - rb * rb + r0 * r0 - 2 * dot(diff[b], c0);
  }
  auto lambda = solve(M, rhs);
  if (!lambda) return std::nullopt;
  std::vector<Scalar> p = c0;
  for (int a = 0; a < m; ++a)
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += (*lambda)[a] * diff[a][k];
  return p;
}

template <class Scalar>
bool block_common_point(const std::vector<std::vector<Scalar>>& c, const std::vector<Scalar>& r,
                        const Tolerance<Scalar>& tol) {
  const int n = static_cast<int>(c.size());
  const int dim = c.empty() ? 0 : static_cast<int>(c[0].size());
  const int max_size = std::min(n, dim + 1);
  std::vector<int> subset;
  std::function<bool(int)> search = [&](int start) {
    if (!subset.empty()) {
      if (auto p = equal_power_point(c, r, subset)) {
        Scalar worst = 0;
        bool first = true;
        for (int k = 0; k < n; ++k) {
          const auto d = minus(*p, c[k]);
          const Scalar power = dot(d, d) - r[k] * r[k];
          if (first || power > worst) worst = power;
          first = false;
        }
        if (tol.lt(worst, Scalar(0))) return true;
      }
    }
    if (static_cast<int>(subset.size()) == max_size) return false;
    for (int k = start; k < n; ++k) {
      subset.push_back(k);
      if (search(k + 1)) return true;
      subset.pop_back();
    }
    return false;
  };
  return search(0);
}

template <class Scalar>
Scalar distance_upper(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  const auto d = minus(a, b);
  return sqrt_upper(dot(d, d));
}

template <class Scalar>
std::vector<Scalar> block_center(const ProductBall<Scalar>& b, int k) {
  std::vector<Scalar> out;
  for (int axis : b.blocks->coarse(k)) out.push_back(b.center(axis));
  return out;
}

template <class Scalar>
std::vector<int> row_major_components(const CoreForm<Scalar>& k, std::vector<std::pair<int, int>>* where = nullptr) {
  std::vector<int> out;
  int r = 0;
  for (std::size_t i = 0; i < k.cells.size(); ++i)
    for (std::size_t j = 0; j < k.cells[i].size(); ++j)
      if (k.cells[i][j].unary()) {
        out.push_back(k.sigma[r++]);
        if (where) where->emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
  return out;
}

}  // namespace

template <class Scalar>
int CoreForm<Scalar>::arity() const {
  int n = 0;
  for (const auto& row : cells)
    for (const auto& cell : row) n += cell.unary();
  return n;
}

template <class Scalar>
std::optional<std::string> core_form_problem(const CoreForm<Scalar>& k) {
  if (!k.space || !k.space->is_product()) return "core form is not over a product space";
  const int rows = k.a.arity(), cols = k.b.arity();
  if (static_cast<int>(k.cells.size()) != rows) return "grid has " + std::to_string(k.cells.size()) + " rows, a has arity " + std::to_string(rows);
  if (!validate(k.a, MembershipLevel::Separated).valid) return "a is not separated";
  if (!validate(k.b, MembershipLevel::Separated).valid) return "b is not separated";
  std::vector<bool> row_hit(rows, false), col_hit(cols, false);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(k.cells[i].size()) != cols) return "grid row " + std::to_string(i + 1) + " has the wrong length";
    for (int j = 0; j < cols; ++j) {
      const auto& cell = k.cells[i][j];
      const std::string at = "cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (cell.c.arity() != cell.d.arity() || cell.c.arity() > 1) return at + ": c and d must be nullary or unary together";
      if (!validate(cell.c, MembershipLevel::Star).valid || !validate(cell.d, MembershipLevel::Star).valid)
        return at + ": factor escapes the domain";
      if (cell.unary()) row_hit[i] = col_hit[j] = true;
    }
  }
  for (int i = 0; i < rows; ++i)
    if (!row_hit[i]) return "row " + std::to_string(i + 1) + " has no unary cell";
  for (int j = 0; j < cols; ++j)
    if (!col_hit[j]) return "column " + std::to_string(j + 1) + " has no unary cell";
  if (static_cast<int>(k.sigma.size()) != k.arity() || !is_permutation(k.sigma))
    return "sigma is not a permutation of the unary cells";
  return std::nullopt;
}

template <class Scalar>
SuperTree<Scalar> core_tree(const CoreForm<Scalar>& k) {
  if (auto problem = core_form_problem(k)) throw DomainError("core form: " + *problem);
  SuperTree<Scalar> t;
  t.space = k.space;
  t.v_domain = k.a.domain;
  t.w_domain = k.b.domain;
  TreeVertex<Scalar> root;
  root.white = k.a.arity();
  root.black = k.b.arity();
  root.p = k.a;
  root.q = k.b;
  root.xi = identity_permutation(root.white * root.black);
  t.vertices.push_back(root);
  int r = 0;
  for (const auto& row : k.cells)
    for (const auto& cell : row) {
      TreeVertex<Scalar> v;
      v.white = v.black = cell.c.arity();
      v.p = cell.c;
      v.q = cell.d;
      if (cell.unary()) {
        v.xi = {0};
        v.edges.push_back(TreeEdge{-1, k.sigma[r++]});
      }
      t.vertices[0].edges.push_back(TreeEdge{static_cast<int>(t.vertices.size()), -1});
      t.vertices.push_back(std::move(v));
    }
  t.root = 0;
  return t;
}

template <class Scalar>
Config<Scalar> core_evaluate(const CoreForm<Scalar>& k) {
  return tree_evaluate(core_tree(k));
}

template <class Scalar>
bool equal(const CoreForm<Scalar>& x, const CoreForm<Scalar>& y) {
  if (x.sigma != y.sigma || !equal(x.a, y.a) || !equal(x.b, y.b) || x.cells.size() != y.cells.size()) return false;
  for (std::size_t i = 0; i < x.cells.size(); ++i) {
    if (x.cells[i].size() != y.cells[i].size()) return false;
    for (std::size_t j = 0; j < x.cells[i].size(); ++j)
      if (!equal(x.cells[i][j].c, y.cells[i][j].c) || !equal(x.cells[i][j].d, y.cells[i][j].d)) return false;
  }
  return true;
}

template <class Scalar>
bool common_point(const std::vector<ProductBall<Scalar>>& balls, const Tolerance<Scalar>& tol) {
  if (balls.empty()) return true;
  const auto& blocks = *balls.front().blocks;
  for (int k = 0; k < blocks.coarse_count(); ++k) {
    std::vector<std::vector<Scalar>> c;
    std::vector<Scalar> r;
    for (const auto& b : balls) {
      c.push_back(block_center(b, k));
      r.push_back(b.radii[k]);
    }
    if (!block_common_point(c, r, tol)) return false;
  }
  return true;
}

template <class Scalar>
ProductBall<Scalar> enclosing_ball(const std::vector<ProductBall<Scalar>>& balls) {
  if (balls.empty()) throw DomainError("enclosing ball of nothing");
  ProductBall<Scalar> out = balls.front();
  const auto& blocks = *out.blocks;
  for (int k = 0; k < blocks.coarse_count(); ++k) {
    const auto& axes = blocks.coarse(k);
    std::vector<Scalar> centroid(axes.size(), Scalar(0));
    std::size_t largest = 0;
    for (std::size_t b = 0; b < balls.size(); ++b) {
      const auto c = block_center(balls[b], k);
      for (std::size_t a = 0; a < axes.size(); ++a) centroid[a] += c[a];
      if (balls[b].radii[k] > balls[largest].radii[k]) largest = b;
    }
    for (auto& v : centroid) v /= Scalar(static_cast<long>(balls.size()));
    auto radius_from = [&](const std::vector<Scalar>& c) {
      Scalar r = 0;
      for (const auto& b : balls) r = std::max(r, Scalar(distance_upper(c, block_center(b, k)) + b.radii[k]));
      return r;
    };
    const auto big = block_center(balls[largest], k);
    const Scalar r_centroid = radius_from(centroid), r_big = radius_from(big);
    const auto& best = r_big <= r_centroid ? big : centroid;
    for (std::size_t a = 0; a < axes.size(); ++a) out.center(axes[a]) = best[a];
    out.radii[k] = std::min(r_centroid, r_big);
  }
  return out;
}

template <class Scalar>
DilationMap<Scalar> map_onto(const ProductBall<Scalar>& domain, const ProductBall<Scalar>& ball) {
  std::vector<Scalar> scales;
  for (std::size_t k = 0; k < ball.radii.size(); ++k) scales.push_back(ball.radii[k] / domain.radii[k]);
  auto f = DilationMap<Scalar>::dilation(domain.blocks, scales, Vec<Scalar>::Zero(domain.center.size()));
  f.translation = ball.center - f.apply(domain.center);
  return f;
}

template <class Scalar>
Criticality<Scalar> criticality(const Config<Scalar>& w) {
  Criticality<Scalar> out;
  if (!w.space->is_product()) throw DomainError("criticality needs a configuration on a product space");
  if (!validate(w, MembershipLevel::Star).valid) {
    out.reason = "w is not star";
    return out;
  }
  CriticalWitness<Scalar> wit;
  auto separator = [&](Factor side, std::vector<std::vector<int>>& blocks, Config<Scalar>& sep) -> bool {
    const auto proj = project(w, side);
    const char* name = side == Factor::V ? "V" : "W";
    blocks = intersection_data(proj, proj).self_partition;
    sep = nullary(proj.space, proj.domain);
    for (const auto& block : blocks) {
      std::vector<ProductBall<Scalar>> balls;
      for (int k : block) balls.push_back(proj.component_ball(k));
      if (!common_point(balls, w.tol())) {
        out.reason = std::string("empty common intersection in ") + name + " class " + set_text(block);
        return false;
      }
      sep.maps.push_back(map_onto(proj.domain, enclosing_ball(balls)));
    }
    if (!validate(sep, MembershipLevel::Separated).valid) {
      out.reason = std::string("no separated enclosure found in ") + name;
      return false;
    }
    return true;
  };
  if (!separator(Factor::V, wit.P, wit.a) || !separator(Factor::W, wit.Q, wit.b)) return out;
  out.witness = std::move(wit);
  return out;
}

template <class Scalar>
CoreForm<Scalar> core_normal_form(const Config<Scalar>& w, const CriticalWitness<Scalar>& wit) {
  const int n = w.arity();
  std::vector<int> row(n, -1), col(n, -1);
  for (std::size_t i = 0; i < wit.P.size(); ++i)
    for (int k : wit.P[i]) row.at(k) = static_cast<int>(i);
  for (std::size_t j = 0; j < wit.Q.size(); ++j)
    for (int k : wit.Q[j]) col.at(k) = static_cast<int>(j);
  if (std::count(row.begin(), row.end(), -1) || std::count(col.begin(), col.end(), -1))
    throw DomainError("core normal form: witness partitions do not cover ar(w)");
  if (wit.a.arity() != static_cast<int>(wit.P.size()) || wit.b.arity() != static_cast<int>(wit.Q.size()))
    throw DomainError("core normal form: separator arities do not match the partitions");
  CoreForm<Scalar> k;
  k.space = w.space;
  k.a = wit.a;
  k.b = wit.b;
  const CoreCell<Scalar> empty{nullary(wit.a.space, wit.a.domain), nullary(wit.b.space, wit.b.domain)};
  k.cells.assign(wit.P.size(), std::vector<CoreCell<Scalar>>(wit.Q.size(), empty));
  std::vector<std::vector<int>> owner(wit.P.size(), std::vector<int>(wit.Q.size(), -1));
  for (int c = 0; c < n; ++c) {
    const int i = row[c], j = col[c];
    if (owner[i][j] >= 0)
      throw DomainError("core normal form: components " + std::to_string(owner[i][j] + 1) + " and " +
                        std::to_string(c + 1) + " share the separator cell (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + "); w is not star");
    owner[i][j] = c;
    auto& cell = k.cells[i][j];
    cell.c = single(wit.a.space, wit.a.domain, compose(invert(wit.a.maps[i]), project_map(w.space, w.maps[c], Factor::V)));
    cell.d = single(wit.b.space, wit.b.domain, compose(invert(wit.b.maps[j]), project_map(w.space, w.maps[c], Factor::W)));
    if (!validate(cell.c, MembershipLevel::Star).valid || !validate(cell.d, MembershipLevel::Star).valid)
      throw DomainError("core normal form: component " + std::to_string(c + 1) + " escapes its separator cell");
  }
  for (const auto& r : owner)
    for (int c : r)
      if (c >= 0) k.sigma.push_back(c);
  if (auto problem = core_form_problem(k)) throw DomainError("core normal form: w is not in the core image (" + *problem + ")");
  if (!equal(core_evaluate(k), w)) throw InvariantError("core normal form: recomposition does not reproduce w");
  return k;
}

template <class Scalar>
std::optional<std::string> core_equivalent(const CoreForm<Scalar>& x, const CoreForm<Scalar>& y) {
  if (x.arity() != y.arity()) return "different arities";
  std::vector<std::pair<int, int>> xs, ys;
  const auto xc = row_major_components(x, &xs), yc = row_major_components(y, &ys);
  const int n = x.arity();
  std::vector<std::pair<int, int>> x_at(n), y_at(n);
  for (int r = 0; r < n; ++r) {
    x_at[xc[r]] = xs[r];
    y_at[yc[r]] = ys[r];
  }
  // Rows (columns) must carry the same components: that fixes the matching.
  std::vector<int> row_map(x.a.arity(), -1), col_map(x.b.arity(), -1);
  for (int c = 0; c < n; ++c) {
    auto [i, j] = x_at[c];
    auto [i2, j2] = y_at[c];
    if ((row_map[i] >= 0 && row_map[i] != i2) || (col_map[j] >= 0 && col_map[j] != j2))
      return "component " + std::to_string(c + 1) + " sits in a different row or column class";
    row_map[i] = i2;
    col_map[j] = j2;
  }
  if (!is_permutation(row_map) || !is_permutation(col_map) || y.a.arity() != x.a.arity() || y.b.arity() != x.b.arity())
    return "row or column classes differ";

  auto coarsen = [&](const Config<Scalar>& p, const Config<Scalar>& q, const std::vector<int>& match,
                     Config<Scalar>& out) -> std::optional<std::string> {
    out = nullary(p.space, p.domain);
    for (int i = 0; i < p.arity(); ++i) {
      const auto bp = p.component_ball(i), bq = q.component_ball(match[i]);
      if (contains(bp, bq, p.tol())) out.maps.push_back(q.maps[match[i]]);
      else if (contains(bq, bp, p.tol())) out.maps.push_back(p.maps[i]);
      else out.maps.push_back(map_onto(p.domain, enclosing_ball(std::vector<ProductBall<Scalar>>{bp, bq})));
    }
    if (!validate(out, MembershipLevel::Separated).valid) return "no separated common coarsening";
    return std::nullopt;
  };
  Config<Scalar> A, B;
  if (auto why = coarsen(x.a, y.a, row_map, A)) return "V: " + *why;
  if (auto why = coarsen(x.b, y.b, col_map, B)) return "W: " + *why;

  const auto& tol = x.a.tol();
  for (int c = 0; c < n; ++c) {
    auto [i, j] = x_at[c];
    auto [i2, j2] = y_at[c];
    const auto Ai = invert(A.maps[i]), Bj = invert(B.maps[j]);
    const auto u1 = compose(Ai, compose(x.a.maps[i], x.cells[i][j].c.maps[0]));
    const auto u2 = compose(Ai, compose(y.a.maps[i2], y.cells[i2][j2].c.maps[0]));
    const auto v1 = compose(Bj, compose(x.b.maps[j], x.cells[i][j].d.maps[0]));
    const auto v2 = compose(Bj, compose(y.b.maps[j2], y.cells[i2][j2].d.maps[0]));
    if (!equal(u1, u2, tol) || !equal(v1, v2, tol))
      return "unary factors of component " + std::to_string(c + 1) + " differ over the common coarsening";
  }
  return std::nullopt;
}

template <class Scalar>
bool shrunk_membership(const Config<Scalar>& w, const Scalar& factor) {
  if (!(factor > 0) || !(factor < 1)) throw DomainError("shrink factor must lie in (0, 1)");
  return validate(right_scale(w, Scalar(1) / factor), MembershipLevel::Star).valid;
}

template <class Scalar>
Refinement<Scalar> common_refinement(const std::vector<Config<Scalar>>& configs) {
  if (configs.empty()) throw DomainError("common refinement of nothing");
  const auto& space = configs.front().space;
  const auto& domain = configs.front().domain;
  struct Disk {
    int config, index;
  };
  std::vector<Disk> disks;
  std::vector<ProductBall<Scalar>> balls;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (!same_blocks(configs[i].space->blocks, space->blocks) || !equal(configs[i].domain, domain, space->tol))
      throw DomainError("common refinement: configurations live on different domains");
    for (int k = 0; k < configs[i].arity(); ++k) {
      disks.push_back({static_cast<int>(i), k});
      balls.push_back(configs[i].component_ball(k));
    }
  }
  const int nd = static_cast<int>(disks.size());
  std::vector<std::vector<bool>> meets(nd, std::vector<bool>(nd, false));
  for (int s = 0; s < nd; ++s)
    for (int t = 0; t < nd; ++t) meets[s][t] = s == t || ball_relations(balls[s], balls[t], space->tol).intersects;
  const auto classes = connected_components(meets);
  std::vector<int> class_of(nd);
  for (std::size_t l = 0; l < classes.size(); ++l)
    for (int s : classes[l]) {
      class_of[s] = static_cast<int>(l);
      for (int t : classes[l])
        if (!meets[s][t]) throw DomainError("common refinement: intersections are not transitive");
    }

  Refinement<Scalar> out;
  out.e = nullary(space, domain);
  const auto grow = DilationMap<Scalar>::scaling(space->blocks, space->settings.separation);
  for (const auto& members : classes) {
    int rep = members.front();
    for (int s : members)
      if (balls[s].radii > balls[rep].radii) rep = s;
    out.e.maps.push_back(compose(configs[disks[rep].config].maps[disks[rep].index], grow));
  }
  if (!validate(out.e, MembershipLevel::Separated).valid)
    throw DomainError("common refinement: the enlarged representatives are not separated (inputs not shrunk enough)");

  const int L = out.e.arity();
  const int e_id = space->group.identity;
  int offset = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& x = configs[i];
    Permutation sigma(L, -1);
    std::vector<Config<Scalar>> parts(L, nullary(space, domain));
    for (int k = 0; k < x.arity(); ++k) {
      const int l = class_of[offset + k];
      if (sigma[l] >= 0) throw DomainError("common refinement: two disks of one configuration intersect");
      sigma[l] = k;
      parts[k] = single(space, domain, compose(invert(out.e.maps[l]), x.maps[k]));
    }
    int next = x.arity();
    for (int l = 0; l < L; ++l)
      if (sigma[l] < 0) sigma[l] = next++;
    if (!equal(compose(act(sigma, e_id, out.e), parts), x))
      throw InvariantError("common refinement: recomposition failed for configuration " + std::to_string(i + 1));
    out.sigma.push_back(std::move(sigma));
    out.parts.push_back(std::move(parts));
    offset += x.arity();
  }
  return out;
}

template <class Scalar>
CoreForm<Scalar> random_core_form(Rng& rng, const SpacePtr<Scalar>& vw, const ProductBall<Scalar>& v_domain,
                                  const ProductBall<Scalar>& w_domain, int max_rows, int max_cols) {
  if (!vw->is_product()) throw DomainError("random core form needs a product space");
  DiskParams disks;
  disks.radius_lo = 0.02;
  disks.radius_hi = 0.15;
  disks.max_rejections = 2000;
  auto separated = [&](const SpacePtr<Scalar>& space, const ProductBall<Scalar>& dom, int arity) {
    for (int attempt = 0; attempt < 100; ++attempt)
      if (auto x = random_member(rng, space, dom, arity, MembershipLevel::Separated, disks)) return *x;
    throw InvariantError("random core form: separated generator starved");
  };
  CoreForm<Scalar> k;
  k.space = vw;
  k.a = separated(vw->first, v_domain, uniform_int(rng, 1, max_rows));
  k.b = separated(vw->second, w_domain, uniform_int(rng, 1, max_cols));
  const int rows = k.a.arity(), cols = k.b.arity();

  std::vector<std::vector<bool>> unary(rows, std::vector<bool>(cols, false));
  for (auto& r : unary)
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = uniform(rng, 0, 1) < 0.6;
  for (int i = 0; i < rows; ++i)
    if (std::find(unary[i].begin(), unary[i].end(), true) == unary[i].end()) unary[i][uniform_int(rng, 0, cols - 1)] = true;
  for (int j = 0; j < cols; ++j) {
    bool hit = false;
    for (int i = 0; i < rows; ++i) hit = hit || unary[i][j];
    if (!hit) unary[uniform_int(rng, 0, rows - 1)][j] = true;
  }

  // A unary factor of scale <= 1/4 whose image still contains the domain centre.
  auto factor = [&](const SpacePtr<Scalar>& space, const ProductBall<Scalar>& dom) {
    const auto& blocks = *space->blocks;
    std::vector<Scalar> scales;
    Vec<Scalar> target = dom.center;
    for (int b = 0; b < blocks.coarse_count(); ++b) {
      const Scalar s = quantize<Scalar>(uniform(rng, 1.0 / 64, 0.25), 256) + Scalar(1) / 256;
      const Scalar s_capped = s > Scalar(1) / 4 ? Scalar(1) / 4 : s;
      scales.push_back(s_capped);
      const auto& axes = blocks.coarse(b);
      const double reach = to_double(s_capped * dom.radii[b]) * uniform(rng, 0, 0.9) / std::sqrt(double(axes.size()));
      for (int axis : axes) target(axis) += quantize<Scalar>(uniform(rng, -reach, reach), 4096);
    }
    auto f = DilationMap<Scalar>::dilation(space->blocks, scales, Vec<Scalar>::Zero(space->dimension()));
    f.ortho = random_ortho<Scalar>(rng, blocks);
    f.translation = target - f.apply(dom.center);
    return single(space, dom, f);
  };
  const CoreCell<Scalar> empty{nullary(vw->first, v_domain), nullary(vw->second, w_domain)};
  k.cells.assign(rows, std::vector<CoreCell<Scalar>>(cols, empty));
  int n = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (unary[i][j]) {
        k.cells[i][j] = {factor(vw->first, v_domain), factor(vw->second, w_domain)};
        ++n;
      }
  k.sigma = random_permutation(rng, n);
  return k;
}

#define DISKOP_INSTANTIATE(S)                                                                                   \
  template struct CoreForm<S>;                                                                                  \
  template std::optional<std::string> core_form_problem(const CoreForm<S>&);                                    \
  template SuperTree<S> core_tree(const CoreForm<S>&);                                                          \
  template Config<S> core_evaluate(const CoreForm<S>&);                                                         \
  template bool equal(const CoreForm<S>&, const CoreForm<S>&);                                                  \
  template bool common_point(const std::vector<ProductBall<S>>&, const Tolerance<S>&);                          \
  template ProductBall<S> enclosing_ball(const std::vector<ProductBall<S>>&);                                   \
  template DilationMap<S> map_onto(const ProductBall<S>&, const ProductBall<S>&);                               \
  template Criticality<S> criticality(const Config<S>&);                                                        \
  template CoreForm<S> core_normal_form(const Config<S>&, const CriticalWitness<S>&);                           \
  template std::optional<std::string> core_equivalent(const CoreForm<S>&, const CoreForm<S>&);                  \
  template bool shrunk_membership(const Config<S>&, const S&);                                                  \
  template Refinement<S> common_refinement(const std::vector<Config<S>>&);                                      \
  template CoreForm<S> random_core_form(Rng&, const SpacePtr<S>&, const ProductBall<S>&, const ProductBall<S>&, \
                                        int, int);

DISKOP_INSTANTIATE(double)
DISKOP_INSTANTIATE(Rational)

}  // namespace diskop
