// Shared fixtures and independent oracles for the unit tests. Oracles here
// deliberately avoid the library's own predicates: they sample points, use
// square roots in double precision, or enumerate exhaustively.
#ifndef DISKOP_TESTS_SUPPORT_HPP
#define DISKOP_TESTS_SUPPORT_HPP

#include "diskop/config.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace diskop::test {

using Q = Rational;

inline Q q(const char* text) { return parse_scalar<Q>(text); }

template <class S>
Vec<S> vec(std::initializer_list<S> values) {
  Vec<S> v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& x : values) v(i++) = x;
  return v;
}

/// Spherical map s*v + t in the plane of `space`.
template <class S>
DilationMap<S> disk(const SpacePtr<S>& space, S s, S tx, S ty) {
  return DilationMap<S>::dilation(space->blocks, {s}, vec<S>({tx, ty}));
}

template <class S>
Config<S> config(const SpacePtr<S>& space, std::vector<DilationMap<S>> maps, S radius = S(1)) {
  return make_config(space, ProductBall<S>::centered(space->blocks, {radius}), std::move(maps));
}

/// Point-evaluation oracle: f is determined by its values on 0 and the basis.
template <class S>
bool same_affine_action(const DilationMap<S>& f, const DilationMap<S>& g) {
  const int d = f.dimension();
  Vec<S> p = Vec<S>::Zero(d);
  if (f.apply(p) != g.apply(p)) return false;
  for (int a = 0; a < d; ++a) {
    p = Vec<S>::Zero(d);
    p(a) = 1;
    if (f.apply(p) != g.apply(p)) return false;
  }
  return true;
}

/// Open-disk containment in the plane via true distances.
inline bool disk_inside(double cx, double cy, double r, double Cx, double Cy, double R) {
  return std::hypot(cx - Cx, cy - Cy) + r <= R + 1e-12;
}

inline bool disks_disjoint(double cx, double cy, double r, double Cx, double Cy, double R) {
  return std::hypot(cx - Cx, cy - Cy) >= r + R - 1e-12;
}

/// A point strictly inside every disk, found by dense grid search.
inline bool grid_common_point(const std::vector<std::array<double, 3>>& disks, int resolution = 400) {
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (auto& d : disks) {
    lo_x = std::min(lo_x, d[0] - d[2]);
    hi_x = std::max(hi_x, d[0] + d[2]);
    lo_y = std::min(lo_y, d[1] - d[2]);
    hi_y = std::max(hi_y, d[1] + d[2]);
  }
  for (int a = 0; a <= resolution; ++a)
    for (int b = 0; b <= resolution; ++b) {
      const double x = lo_x + (hi_x - lo_x) * a / resolution;
      const double y = lo_y + (hi_y - lo_y) * b / resolution;
      bool inside = true;
      for (auto& d : disks) inside = inside && std::hypot(x - d[0], y - d[1]) < d[2];
      if (inside) return true;
    }
  return false;
}

/// Small rationals k/den with |k| < span.
inline Q random_q(std::mt19937_64& rng, int span, int den) {
  std::uniform_int_distribution<int> pick(-span + 1, span - 1);
  return Q(pick(rng)) / Q(den);
}

inline Q random_positive_q(std::mt19937_64& rng, int max_num, int den) {
  std::uniform_int_distribution<int> pick(1, max_num);
  return Q(pick(rng)) / Q(den);
}

/// Random signed permutation matrix of size d.
inline Mat<Q> random_signed_permutation(std::mt19937_64& rng, int d) {
  std::vector<int> perm(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  Mat<Q> m = Mat<Q>::Zero(d, d);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < d; ++i) m(perm[i], i) = coin(rng) ? 1 : -1;
  return m;
}

/// R^1 x R^1 (two coarse blocks) with Z/2 swapping them.
template <class S>
SpacePtr<S> swap_space() {
  auto blocks = std::make_shared<const BlockStructure>(2, std::vector<AxisList>{{0}, {1}}, std::vector<AxisList>{{0}, {1}});
  Mat<S> swap(2, 2);
  swap << 0, 1, 1, 0;
  auto rep = make_group<S>(*blocks, {"e", "s"}, {{0, 1}, {1, 0}}, {Mat<S>::Identity(2, 2), swap}, {});
  return make_space<S>(blocks, rep);
}

/// The plane with the symmetry group of the square acting by signed permutations.
template <class S>
SpacePtr<S> dihedral_space(Tolerance<S> tol = {}) {
  auto blocks = BlockStructure::spherical(2);
  std::vector<Mat<S>> mats;
  for (int swap = 0; swap < 2; ++swap)
    for (int sx : {1, -1})
      for (int sy : {1, -1}) {
        Mat<S> m = Mat<S>::Zero(2, 2);
        if (swap) m(0, 1) = sx, m(1, 0) = sy;
        else m(0, 0) = sx, m(1, 1) = sy;
        mats.push_back(m);
      }
  const int n = static_cast<int>(mats.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mats[a] * mats[b] == mats[c]) table[a][b] = c;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i + 1));
  return make_space<S>(blocks, make_group<S>(*blocks, labels, table, mats, tol), tol);
}

/// Same blocks and settings, trivial group.
template <class S>
SpacePtr<S> without_group(const SpacePtr<S>& space) {
  return make_space<S>(space->blocks, trivial_group<S>(*space->blocks), space->tol, space->settings);
}

/// The five-disk figure: domain B(0,3); x1, x2, x3 solid, y1, y2 dashed.
struct FiveDisks {
  SpacePtr<Q> space = plain_space<Q>(2);
  Config<Q> x, y;
  FiveDisks() {
    auto d = [&](const char* r, const char* cx, const char* cy) { return disk<Q>(space, q(r) / 3, q(cx), q(cy)); };
    x = config<Q>(space, {d("1", "-1.5", "0"), d("1", "1", "1"), d("0.7", "0.8", "-1.8")}, Q(3));
    y = config<Q>(space, {d("1", "-0.5", "1"), d("0.5", "1.5", "-1")}, Q(3));
  }
};

/// Every permutation of {0..n-1} in lexicographic order.
inline std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace diskop::test

#endif  // DISKOP_TESTS_SUPPORT_HPP
