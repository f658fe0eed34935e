#ifndef DISKOP_BALL_HPP
#define DISKOP_BALL_HPP

#include "diskop/dilation.hpp"

namespace diskop {

/// Product of open balls, one per coarse block. The center is stored as a full
/// d-vector; block k owns the coordinates listed in blocks->coarse(k).
template <class Scalar>
struct ProductBall {
  BlocksPtr blocks;
  Vec<Scalar> center;
  std::vector<Scalar> radii;

  static ProductBall unit(BlocksPtr blocks);
  static ProductBall centered(BlocksPtr blocks, std::vector<Scalar> radii);

  int dimension() const { return blocks->dimension(); }
  /// Squared distance between this center and `point` restricted to block k.
  Scalar block_distance2(int k, const Vec<Scalar>& point) const;
  bool is_origin_centered() const;
};

struct BallRelations {
  bool contains = false;
  bool disjoint = false;
  bool intersects = true;
};

/// Relations of open product balls, decided on squared quantities: A is
/// contained in B when every block satisfies r_A <= r_B and
/// |c_A - c_B|^2 <= (r_B - r_A)^2; they are disjoint when some block has
/// |c_A - c_B|^2 >= (r_A + r_B)^2.
template <class Scalar>
BallRelations ball_relations(const ProductBall<Scalar>& a, const ProductBall<Scalar>& b,
                             const Tolerance<Scalar>& tol);

template <class Scalar>
bool contains(const ProductBall<Scalar>& inner, const ProductBall<Scalar>& outer, const Tolerance<Scalar>& tol);

template <class Scalar>
bool disjoint(const ProductBall<Scalar>& a, const ProductBall<Scalar>& b, const Tolerance<Scalar>& tol);

/// f(B): center f(c), radius scale_k * r_k.
template <class Scalar>
ProductBall<Scalar> image(const DilationMap<Scalar>& f, const ProductBall<Scalar>& b);

template <class Scalar>
bool equal(const ProductBall<Scalar>& a, const ProductBall<Scalar>& b, const Tolerance<Scalar>& tol);

/// Same center, every radius multiplied by `factor`.
template <class Scalar>
ProductBall<Scalar> enlarge(const ProductBall<Scalar>& b, const Scalar& factor);

}  // namespace diskop

#endif  // DISKOP_BALL_HPP
