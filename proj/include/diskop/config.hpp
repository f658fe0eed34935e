#ifndef DISKOP_CONFIG_HPP
#define DISKOP_CONFIG_HPP

#include "diskop/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diskop {

/// Permutation of {0..n-1} stored as images: perm[i] = sigma(i).
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
Permutation inverse_permutation(const Permutation& p);
/// (p o q)(i) = p(q(i)).
Permutation compose_permutations(const Permutation& p, const Permutation& q);
bool is_permutation(const Permutation& p);
/// Moves consecutive blocks of the given sizes: block j goes to position
/// sigma(j) in the new block order, keeping its internal order.
Permutation block_permutation(const std::vector<int>& sizes, const Permutation& sigma);
/// tau_1 (+) ... (+) tau_n acting blockwise.
Permutation direct_sum_permutation(const std::vector<Permutation>& parts);

/// alpha: {0..m-1} -> {0..target-1}.
struct StructureMap {
  int target = 0;
  std::vector<int> alpha;

  int source() const { return static_cast<int>(alpha.size()); }
  /// Indices k with alpha(k) = j, in increasing order.
  std::vector<int> fiber(int j) const;
  /// Position of k within its fiber.
  int position(int k) const;
  /// alpha sending consecutive blocks of the given sizes to 0, 1, ...
  static StructureMap blocks(const std::vector<int>& sizes);
};

enum class MembershipLevel { Ambient = 0, Star = 1, Separated = 2 };

const char* level_name(MembershipLevel level);
MembershipLevel parse_level(const std::string& name);

/// An operad element: a tuple of dilation maps acting on a product-ball domain.
template <class Scalar>
struct Config {
  SpacePtr<Scalar> space;
  ProductBall<Scalar> domain;
  std::vector<DilationMap<Scalar>> maps;

  int arity() const { return static_cast<int>(maps.size()); }
  const DilationMap<Scalar>& operator[](int i) const { return maps[i]; }
  const Tolerance<Scalar>& tol() const { return space->tol; }
  /// (g . x_i)(S)
  ProductBall<Scalar> component_ball(int g, int i) const;
  ProductBall<Scalar> component_ball(int i) const { return component_ball(space->group.identity, i); }
};

/// Checks shapes (blocks shared with the space, matching dimensions) and
/// throws DomainError on mismatch.
template <class Scalar>
Config<Scalar> make_config(SpacePtr<Scalar> space, ProductBall<Scalar> domain, std::vector<DilationMap<Scalar>> maps);

template <class Scalar>
Config<Scalar> nullary(const SpacePtr<Scalar>& space, const ProductBall<Scalar>& domain);

/// The operad unit: arity one, identity map.
template <class Scalar>
Config<Scalar> unit(const SpacePtr<Scalar>& space, const ProductBall<Scalar>& domain);

/// Arity one with the single map f.
template <class Scalar>
Config<Scalar> single(const SpacePtr<Scalar>& space, const ProductBall<Scalar>& domain, DilationMap<Scalar> f);

/// Component k of the result is x_{alpha(k)} o q^{alpha(k)}_{position of k in its fiber}.
template <class Scalar>
Config<Scalar> operad_compose(const Config<Scalar>& x, const StructureMap& alpha, const std::vector<Config<Scalar>>& q);

/// x o (y^1, ..., y^n) with the blocks of the result in slot order.
template <class Scalar>
Config<Scalar> compose(const Config<Scalar>& x, const std::vector<Config<Scalar>>& q);

/// x o (s id, ..., s id): every component right-composed with a uniform scaling.
template <class Scalar>
Config<Scalar> right_scale(const Config<Scalar>& x, const Scalar& s);

/// x_A with the induced order; `indices` must be strictly increasing.
template <class Scalar>
Config<Scalar> subconfig(const Config<Scalar>& x, const std::vector<int>& indices);

/// (sigma, g) . x: component i is g x_{sigma^{-1}(i)} g^{-1}.
template <class Scalar>
Config<Scalar> act(const Permutation& sigma, int g, const Config<Scalar>& x);

/// Tuple concatenation (x_1..x_n, y_1..y_m) over a shared domain.
template <class Scalar>
Config<Scalar> concatenate(const Config<Scalar>& x, const Config<Scalar>& y);

struct Violation {
  int g = 0;
  int i = 0;
  int j = -1;  // -1 for single-component predicates
  std::string predicate;
};

struct MembershipReport {
  bool valid = true;
  std::vector<Violation> violations;
};

/// Ambient: every (g x_i)(S) lies in S.  Star: additionally pairwise disjoint.
/// Separated: Star, and for arity > 1 also Star after enlarging every slot by
/// the separation constant.
template <class Scalar>
MembershipReport validate(const Config<Scalar>& x, MembershipLevel level);

/// Highest level x belongs to, or nothing if it is not even Ambient.
template <class Scalar>
std::optional<MembershipLevel> membership_level(const Config<Scalar>& x);

template <class Scalar>
bool equal(const Config<Scalar>& x, const Config<Scalar>& y);

}  // namespace diskop

#endif  // DISKOP_CONFIG_HPP
