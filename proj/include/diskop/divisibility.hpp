#ifndef DISKOP_DIVISIBILITY_HPP
#define DISKOP_DIVISIBILITY_HPP

#include "diskop/config.hpp"

#include <optional>
#include <vector>

namespace diskop {

/// Which balls of x meet which balls of y: relation[i][j] iff x_i(S) meets y_j(S).
struct IntersectionData {
  std::vector<std::vector<bool>> relation;
  /// Connected components of the self-intersection graph of x, each sorted,
  /// ordered by least element.
  std::vector<std::vector<int>> self_partition;

  /// c(I): indices of y meeting some x_i with i in I, increasing.
  std::vector<int> image(const std::vector<int>& indices) const;
  std::vector<int> image(int i) const { return image(std::vector<int>{i}); }
  /// Transposed lookup: indices of x meeting y_j.
  std::vector<int> preimage(int j) const;
};

template <class Scalar>
IntersectionData intersection_data(const Config<Scalar>& x, const Config<Scalar>& y);

/// Connected components of an undirected graph given by a symmetric relation.
std::vector<std::vector<int>> connected_components(const std::vector<std::vector<bool>>& adjacency);

template <class Scalar>
struct Division {
  StructureMap alpha;
  std::vector<Config<Scalar>> quotients;
};

/// Geometric divisibility test. Without a subgroup the domain is tested for
/// G-invariance: if invariant, plain containment y_i(S) in x_j(S) decides;
/// otherwise every group element is checked (the trivial-subgroup case).
/// With a subgroup H the domain must be H-invariant (DomainError otherwise)
/// and containment is checked under one representative per right coset Hg.
/// alpha(i) is the least admissible j. Quotients are validated as Ambient,
/// and as Star whenever y is Star; a failure there throws InvariantError.
template <class Scalar>
std::optional<Division<Scalar>> divides(const Config<Scalar>& x, const Config<Scalar>& y,
                                        const std::optional<std::vector<int>>& subgroup = std::nullopt);

/// q^j = (x_j^{-1} o y_i) over the fiber of j, nullary outside im(alpha).
template <class Scalar>
std::vector<Config<Scalar>> candidate_quotients(const Config<Scalar>& x, const Config<Scalar>& y,
                                                const StructureMap& alpha);

/// The only possible quotients along alpha, returned when they recompose to y
/// and lie at y's membership level (capped at Star); nothing otherwise.
template <class Scalar>
std::optional<std::vector<Config<Scalar>>> left_cancel(const Config<Scalar>& x, const Config<Scalar>& y,
                                                       const StructureMap& alpha);

/// M(g)(S) = S for all g in the subset (all of G when empty).
template <class Scalar>
bool domain_invariant(const Config<Scalar>& x, const std::vector<int>& elements = {});

}  // namespace diskop

#endif  // DISKOP_DIVISIBILITY_HPP
