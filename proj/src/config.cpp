#include "diskop/config.hpp"

#include "diskop/error.hpp"

#include <algorithm>

namespace diskop {

Permutation identity_permutation(int n) {
  Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

bool is_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation inverse_permutation(const Permutation& p) {
  if (!is_permutation(p)) throw DomainError("not a permutation");
  Permutation q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

Permutation compose_permutations(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw DomainError("permutation sizes differ");
  Permutation r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

Permutation block_permutation(const std::vector<int>& sizes, const Permutation& sigma) {
  if (sizes.size() != sigma.size() || !is_permutation(sigma)) throw DomainError("block permutation: bad sigma");
  const int n = static_cast<int>(sizes.size());
  const Permutation inv = inverse_permutation(sigma);
  std::vector<int> new_start(n), old_start(n);
  int pos = 0;
  for (int j = 0; j < n; ++j) old_start[j] = pos, pos += sizes[j];
  pos = 0;
  for (int slot = 0; slot < n; ++slot) new_start[inv[slot]] = pos, pos += sizes[inv[slot]];
  Permutation out(pos);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < sizes[j]; ++k) out[old_start[j] + k] = new_start[j] + k;
  return out;
}

Permutation direct_sum_permutation(const std::vector<Permutation>& parts) {
  Permutation out;
  int offset = 0;
  for (const auto& p : parts) {
    for (int v : p) out.push_back(v + offset);
    offset += static_cast<int>(p.size());
  }
  return out;
}

std::vector<int> StructureMap::fiber(int j) const {
  std::vector<int> out;
  for (int k = 0; k < source(); ++k)
    if (alpha[k] == j) out.push_back(k);
  return out;
}

int StructureMap::position(int k) const {
  int pos = 0;
  for (int l = 0; l < k; ++l)
    if (alpha[l] == alpha[k]) ++pos;
  return pos;
}

StructureMap StructureMap::blocks(const std::vector<int>& sizes) {
  StructureMap s;
  s.target = static_cast<int>(sizes.size());
  for (int j = 0; j < s.target; ++j) s.alpha.insert(s.alpha.end(), sizes[j], j);
  return s;
}

const char* level_name(MembershipLevel level) {
  switch (level) {
    case MembershipLevel::Ambient: return "ambient";
    case MembershipLevel::Star: return "star";
    case MembershipLevel::Separated: return "separated";
  }
  return "?";
}

MembershipLevel parse_level(const std::string& name) {
  if (name == "ambient") return MembershipLevel::Ambient;
  if (name == "star") return MembershipLevel::Star;
  if (name == "separated") return MembershipLevel::Separated;
  throw UsageError("unknown membership level '" + name + "' (expected ambient, star or separated)");
}

template <class Scalar>
ProductBall<Scalar> Config<Scalar>::component_ball(int g, int i) const {
  return image(conjugate(space->group, g, maps[i]), domain);
}

template <class Scalar>
Config<Scalar> make_config(SpacePtr<Scalar> space, ProductBall<Scalar> domain, std::vector<DilationMap<Scalar>> maps) {
  if (!space) throw DomainError("configuration without a space");
  if (!same_blocks(space->blocks, domain.blocks)) throw DomainError("domain does not live in the configuration's space");
  if (domain.center.size() != space->dimension()) throw DomainError("domain center has wrong dimension");
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (!same_blocks(space->blocks, maps[i].blocks))
      throw DomainError("map " + std::to_string(i + 1) + " does not share the domain's block structure");
  Config<Scalar> x;
  x.space = std::move(space);
  x.domain = std::move(domain);
  x.maps = std::move(maps);
  // Share one BlockStructure instance so later checks short-circuit on pointer equality.
  x.domain.blocks = x.space->blocks;
  for (auto& f : x.maps) f.blocks = x.space->blocks;
  return x;
}

template <class Scalar>
Config<Scalar> nullary(const SpacePtr<Scalar>& space, const ProductBall<Scalar>& domain) {
  return make_config<Scalar>(space, domain, {});
}

template <class Scalar>
Config<Scalar> unit(const SpacePtr<Scalar>& space, const ProductBall<Scalar>& domain) {
  return make_config<Scalar>(space, domain, {DilationMap<Scalar>::identity(space->blocks)});
}

template <class Scalar>
Config<Scalar> single(const SpacePtr<Scalar>& space, const ProductBall<Scalar>& domain, DilationMap<Scalar> f) {
  return make_config<Scalar>(space, domain, {std::move(f)});
}

namespace {

template <class Scalar>
void require_same_domain(const Config<Scalar>& x, const Config<Scalar>& y, const char* op) {
  if (!same_blocks(x.space->blocks, y.space->blocks) || !equal(x.domain, y.domain, x.tol()))
    throw DomainError(std::string(op) + ": configurations live on different domains");
}

}  // namespace

template <class Scalar>
Config<Scalar> operad_compose(const Config<Scalar>& x, const StructureMap& alpha, const std::vector<Config<Scalar>>& q) {
  if (alpha.target != x.arity()) throw DomainError("structure map target does not match the arity of x");
  if (static_cast<int>(q.size()) != x.arity()) throw DomainError("need one quotient per slot of x");
  std::vector<int> fiber_size(x.arity(), 0);
  for (int k = 0; k < alpha.source(); ++k) {
    if (alpha.alpha[k] < 0 || alpha.alpha[k] >= x.arity()) throw DomainError("structure map leaves its target");
    ++fiber_size[alpha.alpha[k]];
  }
  for (int j = 0; j < x.arity(); ++j) {
    if (q[j].arity() != fiber_size[j])
      throw DomainError("quotient " + std::to_string(j + 1) + " has arity " + std::to_string(q[j].arity()) +
                        " but its fiber has " + std::to_string(fiber_size[j]) + " elements");
    require_same_domain(x, q[j], "compose");
  }
  std::vector<DilationMap<Scalar>> maps;
  maps.reserve(alpha.source());
  std::vector<int> used(x.arity(), 0);
  for (int k = 0; k < alpha.source(); ++k) {
    const int j = alpha.alpha[k];
    maps.push_back(compose(x.maps[j], q[j].maps[used[j]++]));
  }
  Config<Scalar> out = x;
  out.maps = std::move(maps);
  return out;
}

template <class Scalar>
Config<Scalar> compose(const Config<Scalar>& x, const std::vector<Config<Scalar>>& q) {
  std::vector<int> sizes;
  for (const auto& c : q) sizes.push_back(c.arity());
  StructureMap alpha = StructureMap::blocks(sizes);
  if (alpha.target != x.arity()) throw DomainError("need one configuration per slot of x");
  return operad_compose(x, alpha, q);
}

template <class Scalar>
Config<Scalar> right_scale(const Config<Scalar>& x, const Scalar& s) {
  Config<Scalar> out = x;
  const auto scaling = DilationMap<Scalar>::scaling(x.space->blocks, s);
  for (auto& f : out.maps) f = compose(f, scaling);
  return out;
}

template <class Scalar>
Config<Scalar> subconfig(const Config<Scalar>& x, const std::vector<int>& indices) {
  Config<Scalar> out = x;
  out.maps.clear();
  int prev = -1;
  for (int i : indices) {
    if (i < 0 || i >= x.arity()) throw DomainError("subconfig index " + std::to_string(i + 1) + " out of range");
    if (i <= prev) throw DomainError("subconfig indices must be strictly increasing");
    prev = i;
    out.maps.push_back(x.maps[i]);
  }
  return out;
}

template <class Scalar>
Config<Scalar> act(const Permutation& sigma, int g, const Config<Scalar>& x) {
  if (static_cast<int>(sigma.size()) != x.arity() || !is_permutation(sigma))
    throw DomainError("act: sigma is not a permutation of the arity");
  if (g < 0 || g >= x.space->group.order()) throw DomainError("act: group element out of range");
  Config<Scalar> out = x;
  for (int i = 0; i < x.arity(); ++i) out.maps[sigma[i]] = conjugate(x.space->group, g, x.maps[i]);
  return out;
}

template <class Scalar>
Config<Scalar> concatenate(const Config<Scalar>& x, const Config<Scalar>& y) {
  require_same_domain(x, y, "concatenate");
  Config<Scalar> out = x;
  out.maps.insert(out.maps.end(), y.maps.begin(), y.maps.end());
  return out;
}

namespace {

template <class Scalar>
void check_star(const Config<Scalar>& x, bool pairwise, const std::string& suffix, MembershipReport& report) {
  const auto& group = x.space->group;
  const auto& tol = x.tol();
  std::vector<ProductBall<Scalar>> balls(x.arity());
  for (int g = 0; g < group.order(); ++g) {
    for (int i = 0; i < x.arity(); ++i) {
      balls[i] = x.component_ball(g, i);
      if (!contains(balls[i], x.domain, tol)) report.violations.push_back({g, i, -1, "contained" + suffix});
    }
    if (!pairwise) continue;
    for (int i = 0; i < x.arity(); ++i)
      for (int j = i + 1; j < x.arity(); ++j)
        if (!disjoint(balls[i], balls[j], tol)) report.violations.push_back({g, i, j, "disjoint" + suffix});
  }
}

}  // namespace

template <class Scalar>
MembershipReport validate(const Config<Scalar>& x, MembershipLevel level) {
  MembershipReport report;
  for (int i = 0; i < x.arity(); ++i)
    for (const auto& msg : map_violations(x.maps[i], x.tol()))
      report.violations.push_back({x.space->group.identity, i, -1, "map: " + msg});
  if (!report.violations.empty()) {
    report.valid = false;
    return report;
  }
  check_star(x, level != MembershipLevel::Ambient, "", report);
  if (level == MembershipLevel::Separated && x.arity() > 1)
    check_star(right_scale(x, x.space->settings.separation), true, " after enlargement", report);
  report.valid = report.violations.empty();
  return report;
}

template <class Scalar>
std::optional<MembershipLevel> membership_level(const Config<Scalar>& x) {
  if (validate(x, MembershipLevel::Separated).valid) return MembershipLevel::Separated;
  if (validate(x, MembershipLevel::Star).valid) return MembershipLevel::Star;
  if (validate(x, MembershipLevel::Ambient).valid) return MembershipLevel::Ambient;
  return std::nullopt;
}

template <class Scalar>
bool equal(const Config<Scalar>& x, const Config<Scalar>& y) {
  if (x.arity() != y.arity()) return false;
  if (!same_blocks(x.space->blocks, y.space->blocks) || !equal(x.domain, y.domain, x.tol())) return false;
  for (int i = 0; i < x.arity(); ++i)
    if (!equal(x.maps[i], y.maps[i], x.tol())) return false;
  return true;
}

#define DISKOP_INSTANTIATE(S)                                                                             \
  template struct Config<S>;                                                                              \
  template Config<S> make_config(SpacePtr<S>, ProductBall<S>, std::vector<DilationMap<S>>);               \
  template Config<S> nullary(const SpacePtr<S>&, const ProductBall<S>&);                                  \
  template Config<S> unit(const SpacePtr<S>&, const ProductBall<S>&);                                     \
  template Config<S> single(const SpacePtr<S>&, const ProductBall<S>&, DilationMap<S>);                   \
  template Config<S> operad_compose(const Config<S>&, const StructureMap&, const std::vector<Config<S>>&); \
  template Config<S> compose(const Config<S>&, const std::vector<Config<S>>&);                            \
  template Config<S> right_scale(const Config<S>&, const S&);                                             \
  template Config<S> subconfig(const Config<S>&, const std::vector<int>&);                                \
  template Config<S> act(const Permutation&, int, const Config<S>&);                                      \
  template Config<S> concatenate(const Config<S>&, const Config<S>&);                                     \
  template MembershipReport validate(const Config<S>&, MembershipLevel);                                  \
  template std::optional<MembershipLevel> membership_level(const Config<S>&);                             \
  template bool equal(const Config<S>&, const Config<S>&);

DISKOP_INSTANTIATE(double)
DISKOP_INSTANTIATE(Rational)

}  // namespace diskop
