#include "diskop/space.hpp"

#include "diskop/error.hpp"

namespace diskop {

template <class Scalar>
SpacePtr<Scalar> make_space(BlocksPtr blocks, GroupRep<Scalar> group, Tolerance<Scalar> tol, Settings<Scalar> settings) {
  if (!(settings.separation > 1)) throw DomainError("separation constant must exceed 1");
  if (!(settings.shrink > 0 && settings.shrink < 1)) throw DomainError("shrink factor must lie in (0,1)");
  if (settings.step_cap < 1) throw DomainError("step cap must be positive");
  auto space = std::make_shared<Space<Scalar>>();
  space->blocks = std::move(blocks);
  space->group = std::move(group);
  space->tol = tol;
  space->settings = settings;
  return space;
}

template <class Scalar>
SpacePtr<Scalar> plain_space(int dimension, Tolerance<Scalar> tol) {
  auto blocks = BlockStructure::spherical(dimension);
  auto group = trivial_group<Scalar>(*blocks);
  return make_space<Scalar>(blocks, std::move(group), tol);
}

template <class Scalar>
SpacePtr<Scalar> product_space(const SpacePtr<Scalar>& v, const SpacePtr<Scalar>& w) {
  auto blocks = direct_sum(*v->blocks, *w->blocks);
  auto group = product_group(v->group, w->group, *blocks, v->tol);
  auto space = std::make_shared<Space<Scalar>>();
  space->blocks = blocks;
  space->group = std::move(group);
  space->tol = v->tol;
  space->settings = v->settings;
  space->first = v;
  space->second = w;
  return space;
}

#define DISKOP_INSTANTIATE(S)                                                                  \
  template SpacePtr<S> make_space(BlocksPtr, GroupRep<S>, Tolerance<S>, Settings<S>);          \
  template SpacePtr<S> plain_space(int, Tolerance<S>);                                         \
  template SpacePtr<S> product_space(const SpacePtr<S>&, const SpacePtr<S>&);

DISKOP_INSTANTIATE(double)
DISKOP_INSTANTIATE(Rational)

}  // namespace diskop
