#ifndef DISKOP_RANDOM_HPP
#define DISKOP_RANDOM_HPP

#include "diskop/config.hpp"

#include <optional>
#include <random>

namespace diskop {

using Rng = std::mt19937_64;

/// Rounds to a multiple of 1/den in exact mode; identity for doubles.
/// Keeps rational denominators small so exact arithmetic stays cheap.
template <class Scalar>
Scalar quantize(double value, long den = 1024);

double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive
double log_uniform(Rng& rng, double lo, double hi);
Permutation random_permutation(Rng& rng, int n);

/// Random coarse/fine partitions of {0..d-1}, fine refining coarse.
BlocksPtr random_blocks(Rng& rng, int dimension);

/// Orthogonal matrix block diagonal over the fine blocks: signed permutations
/// in exact mode, Haar-like rotations (QR of a Gaussian matrix) otherwise.
template <class Scalar>
Mat<Scalar> random_ortho(Rng& rng, const BlockStructure& blocks);

struct MapParams {
  double scale_lo = 0.05;
  double scale_hi = 1.5;
  double shift = 1.0;
  bool rotate = true;
};

template <class Scalar>
DilationMap<Scalar> random_map(Rng& rng, const BlocksPtr& blocks, const MapParams& p = {});

/// Unconstrained tuple of random maps on the given domain.
template <class Scalar>
Config<Scalar> random_config(Rng& rng, const SpacePtr<Scalar>& space, const ProductBall<Scalar>& domain, int arity,
                             const MapParams& p = {});

struct DiskParams {
  double center_fraction = 0.8;  // centers uniform in this fraction of the domain
  double radius_lo = 0.02;       // radii log-uniform, relative to the domain radius
  double radius_hi = 0.5;
  bool rotate = true;
  long den = 1024;
  int max_rejections = 100000;
};

/// One map whose image of the domain is a random ball: per coarse block, the
/// center is uniform in center_fraction * S and the radius log-uniform.
template <class Scalar>
DilationMap<Scalar> random_disk(Rng& rng, const SpacePtr<Scalar>& space, const ProductBall<Scalar>& domain,
                                const DiskParams& p = {});

/// Rejection sampling until the configuration validates at `level`; nothing
/// after max_rejections consecutive failures (starvation).
template <class Scalar>
std::optional<Config<Scalar>> random_member(Rng& rng, const SpacePtr<Scalar>& space, const ProductBall<Scalar>& domain,
                                            int arity, MembershipLevel level, const DiskParams& p = {},
                                            int* rejections = nullptr);

/// Star pair (x, y): half the time y = x o_alpha (q^j) for random star
/// quotients along a random alpha, otherwise an independent star element.
template <class Scalar>
std::optional<std::pair<Config<Scalar>, Config<Scalar>>> random_star_pair(Rng& rng, const SpacePtr<Scalar>& space,
                                                                          const ProductBall<Scalar>& domain,
                                                                          int max_arity, const DiskParams& p = {});

/// Separated pair (x, y) on a spherical space in which every disk of either
/// side meets some disk of the other: y is grown disk by disk around randomly
/// chosen x-disks, both smaller (nested clusters) and larger ones.
template <class Scalar>
std::optional<std::pair<Config<Scalar>, Config<Scalar>>> random_separated_pair(Rng& rng, const SpacePtr<Scalar>& space,
                                                                               const ProductBall<Scalar>& domain,
                                                                               int max_arity);

/// Three unit-ball images on a spherical space: y1, y2 apart after enlargement
/// by lambda, x meeting both. Returned maps have unit domain B(0,1) in mind:
/// each is v -> r*v + c, so its image of B(0,1) is B(c, r).
template <class Scalar>
struct CriticalDisks {
  Scalar lambda;
  DilationMap<Scalar> x, y1, y2;
};

template <class Scalar>
CriticalDisks<Scalar> random_critical_disks(Rng& rng, const BlocksPtr& blocks, double lambda_lo = 1.1,
                                            double lambda_hi = 8.0);

}  // namespace diskop

#endif  // DISKOP_RANDOM_HPP
