#ifndef DISKOP_SEPARATED_HPP
#define DISKOP_SEPARATED_HPP

#include "diskop/divisibility.hpp"

namespace diskop {

template <class Scalar>
struct DiskBounds {
  Scalar lower_bound;    // (lambda - 1)/2 * (r1 + r2)
  Scalar mu_threshold;   // 4/(lambda - 1) + 3
};

/// Radius bound for a disk meeting two disks that stay apart after
/// enlargement by lambda. Throws DomainError unless lambda > 1 and radii > 0.
template <class Scalar>
DiskBounds<Scalar> disk_bounds(const Scalar& lambda, const Scalar& r1, const Scalar& r2);

/// Radius of f(S) in the given coarse block (spherical spaces have one).
template <class Scalar>
Scalar radius(const Config<Scalar>& x, int i, int block = 0);

/// Arity <= 1, or still star after enlarging every slot by the separation constant.
template <class Scalar>
bool is_separated(const Config<Scalar>& x);

/// L1: indices of x no larger than any y-disk they meet; R1 the rest.
/// L2: indices of y strictly smaller than every x-disk they meet; R2 the rest.
/// Indices meeting nothing land in L1 / L2.
struct SeparationPartition {
  std::vector<int> L1, R1, L2, R2;
};

/// Requires spherical spaces (a single radius per disk).
template <class Scalar>
SeparationPartition separation_partition(const Config<Scalar>& x, const Config<Scalar>& y);

template <class Scalar>
struct TriangleDecomposition {
  SeparationPartition partition;
  Config<Scalar> right;  // x_i, or x_i o 5id on R1
  Config<Scalar> left;   // y_j, or y_j o 5id on R2
  Config<Scalar> down;   // L1 disks of x, then L2 disks of y
  std::vector<Config<Scalar>> mu, mu_bar, nu, nu_bar;
  Permutation sigma_x, sigma_y;
};

/// Builds the three triangle elements and the factors relating them, then
/// asserts x = right o mu_bar, y = left o nu_bar, down = sigma_x (right o mu)
/// = sigma_y (left o nu). Throws DomainError when the 5x-enlarged x or y is
/// not star (checked in every arity, including one) or some index meets
/// nothing on the other side, InvariantError when an
/// equation fails.
template <class Scalar>
TriangleDecomposition<Scalar> triangle_decomposition(const Config<Scalar>& x, const Config<Scalar>& y);

/// Checks the five equations of a decomposition; names the first failure.
template <class Scalar>
std::optional<std::string> check_triangle(const Config<Scalar>& x, const Config<Scalar>& y,
                                          const TriangleDecomposition<Scalar>& t);

}  // namespace diskop

#endif  // DISKOP_SEPARATED_HPP
