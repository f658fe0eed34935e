#include "diskop/ball.hpp"

#include "diskop/error.hpp"

namespace diskop {

template <class Scalar>
ProductBall<Scalar> ProductBall<Scalar>::unit(BlocksPtr blocks) {
  std::vector<Scalar> radii(blocks->coarse_count(), Scalar(1));
  return centered(std::move(blocks), std::move(radii));
}

template <class Scalar>
ProductBall<Scalar> ProductBall<Scalar>::centered(BlocksPtr blocks, std::vector<Scalar> radii) {
  if (static_cast<int>(radii.size()) != blocks->coarse_count()) throw DomainError("one radius per coarse block required");
  for (const auto& r : radii)
    if (!(r > 0)) throw DomainError("ball radii must be positive");
  ProductBall b;
  b.center = Vec<Scalar>::Zero(blocks->dimension());
  b.radii = std::move(radii);
  b.blocks = std::move(blocks);
  return b;
}

template <class Scalar>
Scalar ProductBall<Scalar>::block_distance2(int k, const Vec<Scalar>& point) const {
  Scalar sum(0);
  for (int axis : blocks->coarse(k)) {
    const Scalar delta = center(axis) - point(axis);
    sum += delta * delta;
  }
  return sum;
}

template <class Scalar>
bool ProductBall<Scalar>::is_origin_centered() const {
  for (Eigen::Index i = 0; i < center.size(); ++i)
    if (center(i) != 0) return false;
  return true;
}

template <class Scalar>
BallRelations ball_relations(const ProductBall<Scalar>& a, const ProductBall<Scalar>& b, const Tolerance<Scalar>& tol) {
  if (!same_blocks(a.blocks, b.blocks)) throw DomainError("ball relations: block structures differ");
  BallRelations rel;
  rel.contains = true;
  rel.disjoint = false;
  for (int k = 0; k < a.blocks->coarse_count(); ++k) {
    const Scalar d2 = a.block_distance2(k, b.center);
    const Scalar& ra = a.radii[k];
    const Scalar& rb = b.radii[k];
    const Scalar gap = rb - ra;
    if (!(tol.le(ra, rb) && tol.le(d2, gap * gap))) rel.contains = false;
    const Scalar sum = ra + rb;
    if (tol.ge(d2, sum * sum)) rel.disjoint = true;
  }
  rel.intersects = !rel.disjoint;
  return rel;
}

template <class Scalar>
bool contains(const ProductBall<Scalar>& inner, const ProductBall<Scalar>& outer, const Tolerance<Scalar>& tol) {
  return ball_relations(inner, outer, tol).contains;
}

template <class Scalar>
bool disjoint(const ProductBall<Scalar>& a, const ProductBall<Scalar>& b, const Tolerance<Scalar>& tol) {
  return ball_relations(a, b, tol).disjoint;
}

template <class Scalar>
ProductBall<Scalar> image(const DilationMap<Scalar>& f, const ProductBall<Scalar>& b) {
  if (!same_blocks(f.blocks, b.blocks)) throw DomainError("image: block structures differ");
  ProductBall<Scalar> out;
  out.blocks = b.blocks;
  out.center = f.apply(b.center);
  out.radii.resize(b.radii.size());
  for (std::size_t k = 0; k < b.radii.size(); ++k) out.radii[k] = f.scales[k] * b.radii[k];
  return out;
}

template <class Scalar>
bool equal(const ProductBall<Scalar>& a, const ProductBall<Scalar>& b, const Tolerance<Scalar>& tol) {
  if (!same_blocks(a.blocks, b.blocks) || !approx_equal(a.center, b.center, tol)) return false;
  for (std::size_t k = 0; k < a.radii.size(); ++k)
    if (!tol.eq(a.radii[k], b.radii[k])) return false;
  return true;
}

template <class Scalar>
ProductBall<Scalar> enlarge(const ProductBall<Scalar>& b, const Scalar& factor) {
  ProductBall<Scalar> out = b;
  for (auto& r : out.radii) r *= factor;
  return out;
}

#define DISKOP_INSTANTIATE(S)                                                                        \
  template struct ProductBall<S>;                                                                    \
  template BallRelations ball_relations(const ProductBall<S>&, const ProductBall<S>&, const Tolerance<S>&); \
  template bool contains(const ProductBall<S>&, const ProductBall<S>&, const Tolerance<S>&);         \
  template bool disjoint(const ProductBall<S>&, const ProductBall<S>&, const Tolerance<S>&);         \
  template ProductBall<S> image(const DilationMap<S>&, const ProductBall<S>&);                       \
  template bool equal(const ProductBall<S>&, const ProductBall<S>&, const Tolerance<S>&);            \
  template ProductBall<S> enlarge(const ProductBall<S>&, const S&);

DISKOP_INSTANTIATE(double)
DISKOP_INSTANTIATE(Rational)

}  // namespace diskop
