#ifndef DISKOP_DILATION_HPP
#define DISKOP_DILATION_HPP

#include "diskop/blocks.hpp"
#include "diskop/numeric.hpp"

#include <string>
#include <vector>

namespace diskop {

/// v |-> O * Lambda * v + t.  O is orthogonal and block diagonal over the fine
/// blocks; Lambda carries one positive scale per coarse block, so O and Lambda
/// commute.
template <class Scalar>
struct DilationMap {
  BlocksPtr blocks;
  Mat<Scalar> ortho;
  std::vector<Scalar> scales;
  Vec<Scalar> translation;

  static DilationMap identity(BlocksPtr blocks);
  /// Uniform scale s on every coarse block, no translation: the map s*id.
  static DilationMap scaling(BlocksPtr blocks, const Scalar& s);
  static DilationMap dilation(BlocksPtr blocks, std::vector<Scalar> scales, Vec<Scalar> translation);

  int dimension() const { return blocks->dimension(); }
  /// The scale acting on a given axis.
  const Scalar& axis_scale(int axis) const { return scales[blocks->coarse_of_axis(axis)]; }
  /// O * Lambda as a dense matrix.
  Mat<Scalar> linear() const;
  Vec<Scalar> apply(const Vec<Scalar>& v) const;
};

/// f o g.  Throws DomainError on block mismatch.
template <class Scalar>
DilationMap<Scalar> compose(const DilationMap<Scalar>& f, const DilationMap<Scalar>& g);

template <class Scalar>
DilationMap<Scalar> operator*(const DilationMap<Scalar>& f, const DilationMap<Scalar>& g) {
  return compose(f, g);
}

template <class Scalar>
DilationMap<Scalar> invert(const DilationMap<Scalar>& f);

/// Right composition with a per-coarse-block scaling, f o diag(factors).
template <class Scalar>
DilationMap<Scalar> rescale_right(const DilationMap<Scalar>& f, const std::vector<Scalar>& factors);

template <class Scalar>
bool equal(const DilationMap<Scalar>& f, const DilationMap<Scalar>& g, const Tolerance<Scalar>& tol);

/// Human-readable reasons the map breaks its type invariants; empty when valid.
/// In exact mode the orthogonal part must be a signed permutation matrix.
template <class Scalar>
std::vector<std::string> map_violations(const DilationMap<Scalar>& f, const Tolerance<Scalar>& tol);

/// True when m is orthogonal within tolerance.
template <class Scalar>
bool is_orthogonal(const Mat<Scalar>& m, const Tolerance<Scalar>& tol);

template <class Scalar>
bool is_signed_permutation(const Mat<Scalar>& m);

/// Block diagonal sum diag(a, b) of two square matrices.
template <class Scalar>
Mat<Scalar> direct_sum(const Mat<Scalar>& a, const Mat<Scalar>& b);

}  // namespace diskop

#endif  // DISKOP_DILATION_HPP
