#include "diskop/divisibility.hpp"

#include "diskop/error.hpp"

#include <algorithm>
#include <numeric>

namespace diskop {

std::vector<int> IntersectionData::image(const std::vector<int>& indices) const {
  std::vector<int> out;
  const int m = relation.empty() ? 0 : static_cast<int>(relation.front().size());
  for (int j = 0; j < m; ++j)
    for (int i : indices)
      if (relation[i][j]) {
        out.push_back(j);
        break;
      }
  return out;
}

std::vector<int> IntersectionData::preimage(int j) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < relation.size(); ++i)
    if (relation[i][j]) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<std::vector<int>> connected_components(const std::vector<std::vector<bool>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (int w = 0; w < n; ++w)
        if (comp[w] < 0 && (adjacency[v][w] || adjacency[w][v])) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

template <class Scalar>
IntersectionData intersection_data(const Config<Scalar>& x, const Config<Scalar>& y) {
  if (!same_blocks(x.space->blocks, y.space->blocks) || !equal(x.domain, y.domain, x.tol()))
    throw DomainError("intersection data: configurations live on different domains");
  IntersectionData data;
  std::vector<ProductBall<Scalar>> xb, yb;
  for (int i = 0; i < x.arity(); ++i) xb.push_back(x.component_ball(i));
  for (int j = 0; j < y.arity(); ++j) yb.push_back(y.component_ball(j));
  data.relation.assign(x.arity(), std::vector<bool>(y.arity(), false));
  for (int i = 0; i < x.arity(); ++i)
    for (int j = 0; j < y.arity(); ++j) data.relation[i][j] = ball_relations(xb[i], yb[j], x.tol()).intersects;
  std::vector<std::vector<bool>> self(x.arity(), std::vector<bool>(x.arity(), false));
  for (int i = 0; i < x.arity(); ++i)
    for (int k = 0; k < x.arity(); ++k) self[i][k] = i == k || ball_relations(xb[i], xb[k], x.tol()).intersects;
  data.self_partition = connected_components(self);
  return data;
}

template <class Scalar>
bool domain_invariant(const Config<Scalar>& x, const std::vector<int>& elements) {
  const auto& group = x.space->group;
  std::vector<int> gs = elements;
  if (gs.empty()) {
    gs.resize(group.order());
    std::iota(gs.begin(), gs.end(), 0);
  }
  for (int g : gs)
    if (!equal(act_on_ball(group, g, x.domain), x.domain, x.tol())) return false;
  return true;
}

template <class Scalar>
std::vector<Config<Scalar>> candidate_quotients(const Config<Scalar>& x, const Config<Scalar>& y,
                                                const StructureMap& alpha) {
  if (alpha.target != x.arity() || alpha.source() != y.arity())
    throw DomainError("structure map does not run from ar(y) to ar(x)");
  std::vector<Config<Scalar>> q;
  for (int j = 0; j < x.arity(); ++j) {
    Config<Scalar> qj = nullary(x.space, x.domain);
    const auto inv = invert(x.maps[j]);
    for (int i : alpha.fiber(j)) qj.maps.push_back(compose(inv, y.maps[i]));
    q.push_back(std::move(qj));
  }
  return q;
}

template <class Scalar>
std::optional<Division<Scalar>> divides(const Config<Scalar>& x, const Config<Scalar>& y,
                                        const std::optional<std::vector<int>>& subgroup) {
  if (!same_blocks(x.space->blocks, y.space->blocks) || !equal(x.domain, y.domain, x.tol()))
    throw DomainError("divides: configurations live on different domains");
  const auto& group = x.space->group;
  std::vector<int> representatives;
  if (subgroup) {
    if (!is_subgroup(group.table, *subgroup)) throw DomainError("divides: the given elements do not form a subgroup");
    if (!domain_invariant(x, *subgroup)) throw DomainError("divides: the domain is not invariant under the subgroup");
    for (const auto& coset : right_cosets(group.table, *subgroup)) representatives.push_back(coset.front());
  } else if (domain_invariant(x)) {
    representatives = {group.identity};
  } else {
    representatives.resize(group.order());
    std::iota(representatives.begin(), representatives.end(), 0);
  }

  std::vector<std::vector<ProductBall<Scalar>>> xb(representatives.size()), yb(representatives.size());
  for (std::size_t r = 0; r < representatives.size(); ++r) {
    for (int j = 0; j < x.arity(); ++j) xb[r].push_back(x.component_ball(representatives[r], j));
    for (int i = 0; i < y.arity(); ++i) yb[r].push_back(y.component_ball(representatives[r], i));
  }
  Division<Scalar> division;
  division.alpha.target = x.arity();
  for (int i = 0; i < y.arity(); ++i) {
    int chosen = -1;
    for (int j = 0; j < x.arity() && chosen < 0; ++j) {
      bool ok = true;
      for (std::size_t r = 0; r < representatives.size() && ok; ++r) ok = contains(yb[r][i], xb[r][j], x.tol());
      if (ok) chosen = j;
    }
    if (chosen < 0) return std::nullopt;
    division.alpha.alpha.push_back(chosen);
  }
  division.quotients = candidate_quotients(x, y, division.alpha);
  const bool y_star = validate(y, MembershipLevel::Star).valid;
  for (std::size_t j = 0; j < division.quotients.size(); ++j) {
    const auto& qj = division.quotients[j];
    if (!validate(qj, MembershipLevel::Ambient).valid)
      throw InvariantError("divides: quotient " + std::to_string(j + 1) + " escapes the domain");
    if (y_star && !validate(qj, MembershipLevel::Star).valid)
      throw InvariantError("divides: quotient " + std::to_string(j + 1) + " of a star element is not star");
  }
  if (!equal(operad_compose(x, division.alpha, division.quotients), y))
    throw InvariantError("divides: recomposition does not reproduce y");
  return division;
}

template <class Scalar>
std::optional<std::vector<Config<Scalar>>> left_cancel(const Config<Scalar>& x, const Config<Scalar>& y,
                                                       const StructureMap& alpha) {
  auto q = candidate_quotients(x, y, alpha);
  if (!equal(operad_compose(x, alpha, q), y)) return std::nullopt;
  auto level = membership_level(y);
  if (level) {
    const MembershipLevel required = std::min(*level, MembershipLevel::Star);
    for (const auto& qj : q)
      if (!validate(qj, required).valid) return std::nullopt;
  }
  return q;
}

#define DISKOP_INSTANTIATE(S)                                                                                  \
  template IntersectionData intersection_data(const Config<S>&, const Config<S>&);                            \
  template bool domain_invariant(const Config<S>&, const std::vector<int>&);                                  \
  template std::vector<Config<S>> candidate_quotients(const Config<S>&, const Config<S>&, const StructureMap&); \
  template std::optional<Division<S>> divides(const Config<S>&, const Config<S>&,                             \
                                              const std::optional<std::vector<int>>&);                        \
  template std::optional<std::vector<Config<S>>> left_cancel(const Config<S>&, const Config<S>&,              \
                                                             const StructureMap&);

DISKOP_INSTANTIATE(double)
DISKOP_INSTANTIATE(Rational)

}  // namespace diskop
