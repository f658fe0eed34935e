#ifndef DISKOP_SPACE_HPP
#define DISKOP_SPACE_HPP

#include "diskop/group.hpp"

#include <memory>

namespace diskop {

template <class Scalar>
struct Settings {
  Scalar separation{5};
  Scalar shrink = Scalar(1) / Scalar(50);
  int step_cap = 64;
};

/// The ambient representation: blocks, framing group, comparison tolerance.
/// Product spaces remember their factors so projections can be taken.
template <class Scalar>
struct Space {
  BlocksPtr blocks;
  GroupRep<Scalar> group;
  Tolerance<Scalar> tol;
  Settings<Scalar> settings;
  std::shared_ptr<const Space> first;   // V factor of a product space
  std::shared_ptr<const Space> second;  // W factor

  int dimension() const { return blocks->dimension(); }
  bool is_product() const { return first != nullptr; }
};

template <class Scalar>
using SpacePtr = std::shared_ptr<const Space<Scalar>>;

template <class Scalar>
SpacePtr<Scalar> make_space(BlocksPtr blocks, GroupRep<Scalar> group, Tolerance<Scalar> tol = {},
                            Settings<Scalar> settings = {});

/// Spherical R^d with the trivial group.
template <class Scalar>
SpacePtr<Scalar> plain_space(int dimension, Tolerance<Scalar> tol = {});

/// V x W with the diagonal group action; V axes come first.
template <class Scalar>
SpacePtr<Scalar> product_space(const SpacePtr<Scalar>& v, const SpacePtr<Scalar>& w);

}  // namespace diskop

#endif  // DISKOP_SPACE_HPP
