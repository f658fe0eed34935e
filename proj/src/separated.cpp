#include "diskop/separated.hpp"

#include "diskop/error.hpp"

#include <algorithm>

namespace diskop {

template <class Scalar>
DiskBounds<Scalar> disk_bounds(const Scalar& lambda, const Scalar& r1, const Scalar& r2) {
  if (!(lambda > 1)) throw DomainError("disk bounds need lambda > 1");
  if (!(r1 > 0) || !(r2 > 0)) throw DomainError("disk bounds need positive radii");
  const Scalar gap = lambda - 1;
  return {gap / 2 * (r1 + r2), Scalar(4) / gap + 3};
}

template <class Scalar>
Scalar radius(const Config<Scalar>& x, int i, int block) {
  return x.maps[i].scales[block] * x.domain.radii[block];
}

template <class Scalar>
bool is_separated(const Config<Scalar>& x) {
  return validate(x, MembershipLevel::Separated).valid;
}

namespace {

template <class Scalar>
void require_spherical(const Config<Scalar>& x, const char* op) {
  if (x.space->blocks->coarse_count() != 1)
    throw DomainError(std::string(op) + " needs a spherical space (one coarse block)");
}

int rank_in(const std::vector<int>& sorted, int v) {
  return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

}  // namespace

template <class Scalar>
SeparationPartition separation_partition(const Config<Scalar>& x, const Config<Scalar>& y) {
  require_spherical(x, "separation partition");
  const auto data = intersection_data(x, y);
  SeparationPartition p;
  for (int i = 0; i < x.arity(); ++i) {
    bool small = true;
    for (int j : data.image(i)) small = small && x.tol().le(radius(x, i), radius(y, j));
    (small ? p.L1 : p.R1).push_back(i);
  }
  for (int j = 0; j < y.arity(); ++j) {
    bool small = true;
    for (int i : data.preimage(j)) small = small && x.tol().gt(radius(x, i), radius(y, j));
    (small ? p.L2 : p.R2).push_back(j);
  }
  return p;
}

template <class Scalar>
std::optional<std::string> check_triangle(const Config<Scalar>& x, const Config<Scalar>& y,
                                          const TriangleDecomposition<Scalar>& t) {
  const int e = x.space->group.identity;
  if (!equal(compose(t.right, t.mu_bar), x)) return "x != right o mu_bar";
  if (!equal(compose(t.left, t.nu_bar), y)) return "y != left o nu_bar";
  if (!equal(act(t.sigma_x, e, compose(t.right, t.mu)), t.down)) return "down != sigma_x (right o mu)";
  if (!equal(act(t.sigma_y, e, compose(t.left, t.nu)), t.down)) return "down != sigma_y (left o nu)";
  for (const auto* c : {&t.right, &t.left, &t.down})
    if (!validate(*c, MembershipLevel::Star).valid) return "a triangle element is not star";
  for (const auto* fam : {&t.mu, &t.mu_bar, &t.nu, &t.nu_bar})
    for (const auto& c : *fam)
      if (!validate(c, MembershipLevel::Separated).valid) return "a factor is not separated";
  return std::nullopt;
}

template <class Scalar>
TriangleDecomposition<Scalar> triangle_decomposition(const Config<Scalar>& x, const Config<Scalar>& y) {
  require_spherical(x, "triangle decomposition");
  // Separation is vacuous in arity one, but the enlarged disks must still fit.
  const Scalar five = x.space->settings.separation;
  if (!validate(right_scale(x, five), MembershipLevel::Star).valid)
    throw DomainError("triangle decomposition: x is not separated (5x-enlarged disks must fit, even in arity 1)");
  if (!validate(right_scale(y, five), MembershipLevel::Star).valid)
    throw DomainError("triangle decomposition: y is not separated (5x-enlarged disks must fit, even in arity 1)");
  const auto data = intersection_data(x, y);
  for (int i = 0; i < x.arity(); ++i)
    if (data.image(i).empty())
      throw DomainError("triangle decomposition: x_" + std::to_string(i + 1) + " meets no disk of y");
  for (int j = 0; j < y.arity(); ++j)
    if (data.preimage(j).empty())
      throw DomainError("triangle decomposition: y_" + std::to_string(j + 1) + " meets no disk of x");

  TriangleDecomposition<Scalar> t;
  t.partition = separation_partition(x, y);
  const auto& P = t.partition;
  const auto& space = x.space;
  const auto grow = DilationMap<Scalar>::scaling(space->blocks, five);
  const auto id = unit(space, x.domain);
  const auto shrink = single(space, x.domain, DilationMap<Scalar>::scaling(space->blocks, Scalar(1) / five));
  const int l1 = static_cast<int>(P.L1.size());

  auto in = [](const std::vector<int>& v, int k) { return std::binary_search(v.begin(), v.end(), k); };

  t.right = x;
  t.left = y;
  for (int i : P.R1) t.right.maps[i] = compose(x.maps[i], grow);
  for (int j : P.R2) t.left.maps[j] = compose(y.maps[j], grow);
  t.down = nullary(space, x.domain);
  for (int i : P.L1) t.down.maps.push_back(x.maps[i]);
  for (int j : P.L2) t.down.maps.push_back(y.maps[j]);

  for (int i = 0; i < x.arity(); ++i) {
    t.mu_bar.push_back(in(P.L1, i) ? id : shrink);
    if (in(P.L1, i)) {
      t.mu.push_back(id);
      t.sigma_x.push_back(rank_in(P.L1, i));
      continue;
    }
    Config<Scalar> m = nullary(space, x.domain);
    const auto inv = invert(t.right.maps[i]);
    for (int j : data.image(i)) {
      if (!in(P.L2, j))
        throw InvariantError("triangle decomposition: y_" + std::to_string(j + 1) + " meets the larger x_" +
                             std::to_string(i + 1) + " but is not in L2");
      m.maps.push_back(compose(inv, y.maps[j]));
      t.sigma_x.push_back(l1 + rank_in(P.L2, j));
    }
    t.mu.push_back(std::move(m));
  }
  for (int j = 0; j < y.arity(); ++j) {
    t.nu_bar.push_back(in(P.L2, j) ? id : shrink);
    if (in(P.L2, j)) {
      t.nu.push_back(id);
      t.sigma_y.push_back(l1 + rank_in(P.L2, j));
      continue;
    }
    Config<Scalar> n = nullary(space, x.domain);
    const auto inv = invert(t.left.maps[j]);
    for (int i : data.preimage(j)) {
      if (!in(P.L1, i))
        throw InvariantError("triangle decomposition: x_" + std::to_string(i + 1) + " meets the larger y_" +
                             std::to_string(j + 1) + " but is not in L1");
      n.maps.push_back(compose(inv, x.maps[i]));
      t.sigma_y.push_back(rank_in(P.L1, i));
    }
    t.nu.push_back(std::move(n));
  }
  if (!is_permutation(t.sigma_x) || !is_permutation(t.sigma_y) ||
      static_cast<int>(t.sigma_x.size()) != t.down.arity() || static_cast<int>(t.sigma_y.size()) != t.down.arity())
    throw InvariantError("triangle decomposition: reindexing is not a bijection onto the down element");
  if (auto failure = check_triangle(x, y, t)) throw InvariantError("triangle decomposition: " + *failure);
  return t;
}

#define DISKOP_INSTANTIATE(S)                                                                                    \
  template DiskBounds<S> disk_bounds(const S&, const S&, const S&);                                              \
  template S radius(const Config<S>&, int, int);                                                                 \
  template bool is_separated(const Config<S>&);                                                                  \
  template SeparationPartition separation_partition(const Config<S>&, const Config<S>&);                         \
  template std::optional<std::string> check_triangle(const Config<S>&, const Config<S>&,                        \
                                                     const TriangleDecomposition<S>&);                           \
  template TriangleDecomposition<S> triangle_decomposition(const Config<S>&, const Config<S>&);

DISKOP_INSTANTIATE(double)
DISKOP_INSTANTIATE(Rational)

}  // namespace diskop
