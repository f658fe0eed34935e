#ifndef DISKOP_CORE_HPP
#define DISKOP_CORE_HPP

#include "diskop/tensor.hpp"

namespace diskop {

/// (c, d): nullary together or unary together.
template <class Scalar>
struct CoreCell {
  Config<Scalar> c;  // over B_V
  Config<Scalar> d;  // over B_W
  bool unary() const { return c.arity() == 1; }
};

/// (sigma . ((a (x) b) o (c^{ij} (x) d^{ij}))): the composite lists the unary
/// cells in row-major order, and sigma sends that position to the final index.
template <class Scalar>
struct CoreForm {
  SpacePtr<Scalar> space;  // V x W
  Permutation sigma;
  Config<Scalar> a, b;
  std::vector<std::vector<CoreCell<Scalar>>> cells;  // ar(a) x ar(b)

  int arity() const;
};

/// First violated invariant, or nothing.
template <class Scalar>
std::optional<std::string> core_form_problem(const CoreForm<Scalar>& k);

/// Height-two tree: root (a, b), one (c, d) vertex per cell.
template <class Scalar>
SuperTree<Scalar> core_tree(const CoreForm<Scalar>& k);

template <class Scalar>
Config<Scalar> core_evaluate(const CoreForm<Scalar>& k);

template <class Scalar>
bool equal(const CoreForm<Scalar>& x, const CoreForm<Scalar>& y);

/// True iff the open product balls share a point. Exact: the minimiser of the
/// largest power max_k(|p - c_k|^2 - r_k^2) is the equal-power point of some
/// subset of at most dim+1 centres, so all such points are tried per block.
template <class Scalar>
bool common_point(const std::vector<ProductBall<Scalar>>& balls, const Tolerance<Scalar>& tol);

/// A ball containing all of `balls` (not necessarily the smallest): centre at
/// the centroid of the centres or at the largest ball's centre, whichever
/// needs the smaller radius; radii rounded up in exact mode.
template <class Scalar>
ProductBall<Scalar> enclosing_ball(const std::vector<ProductBall<Scalar>>& balls);

/// The map sending the domain onto the ball.
template <class Scalar>
DilationMap<Scalar> map_onto(const ProductBall<Scalar>& domain, const ProductBall<Scalar>& ball);

template <class Scalar>
struct CriticalWitness {
  std::vector<std::vector<int>> P;  // overlap classes of pr_V w
  std::vector<std::vector<int>> Q;  // overlap classes of pr_W w
  Config<Scalar> a, b;              // the separator pair
};

template <class Scalar>
struct Criticality {
  std::optional<CriticalWitness<Scalar>> witness;
  std::string reason;  // why no witness was produced
};

/// Partitions, common-point certificates and canonical separators
/// (a_i = map onto the enclosing ball of block P_i). Sound, not complete.
template <class Scalar>
Criticality<Scalar> criticality(const Config<Scalar>& w);

/// Solves every cell by left cancellation against the separator and checks
/// that the result evaluates back to w. DomainError when two components share
/// a cell or a component escapes its separator cell.
template <class Scalar>
CoreForm<Scalar> core_normal_form(const Config<Scalar>& w, const CriticalWitness<Scalar>& witness);

/// Certificate that x and y are the same tensor element: rows and columns
/// carry the same components, and a separated pair (A, B) containing both
/// separators rewrites each as (A (x) B) o (u^{ij} (x) v^{ij}) with identical
/// unary factors. Nothing when certified, else the reason.
template <class Scalar>
std::optional<std::string> core_equivalent(const CoreForm<Scalar>& x, const CoreForm<Scalar>& y);

/// w factors as w' o (factor id) with w' star.
template <class Scalar>
bool shrunk_membership(const Config<Scalar>& w, const Scalar& factor);

template <class Scalar>
struct Refinement {
  Config<Scalar> e;
  std::vector<Permutation> sigma;                  // one per input configuration
  std::vector<std::vector<Config<Scalar>>> parts;  // e^{i,k}, k over ar(e)
};

/// Classes of intersecting disks across all configurations, represented by
/// the largest member enlarged by the separation constant, such that
/// configs[i] = (sigma_i . e) o (parts[i][k])_k. DomainError when
/// intersections are not transitive or a configuration is not shrunk.
template <class Scalar>
Refinement<Scalar> common_refinement(const std::vector<Config<Scalar>>& configs);

/// Random element of the additive core whose cell factors have scale at most
/// 1/4 and contain the centre of the domain, so every row and column of the
/// value is one overlap class.
template <class Scalar>
CoreForm<Scalar> random_core_form(Rng& rng, const SpacePtr<Scalar>& vw, const ProductBall<Scalar>& v_domain,
                                  const ProductBall<Scalar>& w_domain, int max_rows, int max_cols);

}  // namespace diskop

#endif  // DISKOP_CORE_HPP
