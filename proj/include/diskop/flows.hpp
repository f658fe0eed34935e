#ifndef DISKOP_FLOWS_HPP
#define DISKOP_FLOWS_HPP

#include "diskop/core.hpp"

namespace diskop {

/// ShrinkLeft: (1-t)id o x_i.  ShrinkRight: x_i o (1-t)id.
/// ShrinkRightProduct: the same on a product space, (1-t) on both factors.
enum class FlowKind { ShrinkLeft, ShrinkRight, ShrinkRightProduct };

const char* flow_name(FlowKind kind);
FlowKind parse_flow(const std::string& name);

/// DomainError unless 0 <= t < 1.
template <class Scalar>
Config<Scalar> flow_apply(const Config<Scalar>& x, FlowKind kind, const Scalar& t);

/// ShrinkLeft: every (g x_i)(B) lies in B.  Shrink right kinds: the
/// (g x_i)(B') are pairwise disjoint and lie in B'.
template <class Scalar>
bool in_target(const Config<Scalar>& x, FlowKind kind, const ProductBall<Scalar>& inner,
               const ProductBall<Scalar>& outer);

struct BindingConstraint {
  std::string what;  // "contained" or "disjoint"
  int g = 0, i = -1, j = -1, block = -1;
};

template <class Scalar>
struct EntryTimeReport {
  Scalar t;
  FlowKind kind;
  std::optional<BindingConstraint> binding;  // none when t = 0
  std::string target;
};

/// Least t with flow_apply(x, kind, t) in the target (inner B within outer B').
/// x lives on B' for ShrinkLeft and on B for the right kinds. Every constraint
/// is linear in 1-t; exact mode needs rational distances ("irrational entry time").
template <class Scalar>
EntryTimeReport<Scalar> entry_time(const Config<Scalar>& x, FlowKind kind, const ProductBall<Scalar>& inner,
                                   const ProductBall<Scalar>& outer);

template <class Scalar>
struct SphericalRescale {
  std::vector<std::vector<Scalar>> lambda;  // per component, per coarse block
  Config<Scalar> retracted;
};

/// lambda_k = min_j s_j / s_k; the retracted components have equal scales on all blocks.
template <class Scalar>
SphericalRescale<Scalar> spherical_rescale(const Config<Scalar>& x);

template <class Scalar>
struct CoreEntry {
  Scalar t;
  int steps = 0;
  Config<Scalar> shrunk;
  CriticalWitness<Scalar> witness;
};

/// First t_k = 1 - shrink/2^k (k <= step cap) at which the ShrinkRightProduct
/// flow of the tree's value is shrunk and critical. DomainError, with the last
/// state, if the cap runs out.
template <class Scalar>
CoreEntry<Scalar> core_entry_time(const SuperTree<Scalar>& t);

}  // namespace diskop

#endif  // DISKOP_FLOWS_HPP
