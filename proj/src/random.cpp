#include "diskop/random.hpp"

#include "diskop/error.hpp"

#include <algorithm>
#include <cmath>

namespace diskop {

template <>
double quantize<double>(double value, long) {
  return value;
}

template <>
Rational quantize<Rational>(double value, long den) {
  return Rational(static_cast<long long>(std::llround(value * static_cast<double>(den)))) / Rational(den);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double log_uniform(Rng& rng, double lo, double hi) { return std::exp(uniform(rng, std::log(lo), std::log(hi))); }

Permutation random_permutation(Rng& rng, int n) {
  Permutation p = identity_permutation(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

namespace {

// Splits an ordered list into consecutive nonempty chunks at random cut points.
std::vector<AxisList> random_chunks(Rng& rng, const AxisList& axes) {
  std::vector<AxisList> out{{axes.front()}};
  for (std::size_t i = 1; i < axes.size(); ++i) {
    if (uniform_int(rng, 0, 1)) out.push_back({});
    out.back().push_back(axes[i]);
  }
  return out;
}

}  // namespace

BlocksPtr random_blocks(Rng& rng, int dimension) {
  AxisList axes = identity_permutation(dimension);
  std::shuffle(axes.begin(), axes.end(), rng);
  std::vector<AxisList> coarse = random_chunks(rng, axes);
  std::vector<AxisList> fine;
  for (const auto& block : coarse)
    for (auto& chunk : random_chunks(rng, block)) fine.push_back(std::move(chunk));
  return std::make_shared<const BlockStructure>(dimension, coarse, fine);
}

template <class Scalar>
Mat<Scalar> random_ortho(Rng& rng, const BlockStructure& blocks) {
  const int d = blocks.dimension();
  Mat<Scalar> m = Mat<Scalar>::Zero(d, d);
  for (const auto& block : blocks.fine_blocks()) {
    const int n = static_cast<int>(block.size());
    if constexpr (is_exact_v<Scalar>) {
      Permutation p = random_permutation(rng, n);
      for (int i = 0; i < n; ++i) m(block[p[i]], block[i]) = uniform_int(rng, 0, 1) ? 1 : -1;
    } else {
      std::normal_distribution<double> gauss;
      Mat<double> g(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = gauss(rng);
      Eigen::HouseholderQR<Mat<double>> qr(g);
      Mat<double> qm = qr.householderQ();
      Mat<double> rm = qr.matrixQR().template triangularView<Eigen::Upper>();
      for (int c = 0; c < n; ++c)
        if (rm(c, c) < 0) qm.col(c) *= -1;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(block[r], block[c]) = qm(r, c);
    }
  }
  return m;
}

template <class Scalar>
DilationMap<Scalar> random_map(Rng& rng, const BlocksPtr& blocks, const MapParams& p) {
  std::vector<Scalar> scales;
  for (int k = 0; k < blocks->coarse_count(); ++k) {
    Scalar s = quantize<Scalar>(log_uniform(rng, p.scale_lo, p.scale_hi));
    if (!(s > 0)) s = quantize<Scalar>(p.scale_hi);
    scales.push_back(s);
  }
  Vec<Scalar> t(blocks->dimension());
  for (int a = 0; a < blocks->dimension(); ++a) t(a) = quantize<Scalar>(uniform(rng, -p.shift, p.shift));
  auto f = DilationMap<Scalar>::dilation(blocks, std::move(scales), std::move(t));
  if (p.rotate) f.ortho = random_ortho<Scalar>(rng, *blocks);
  return f;
}

template <class Scalar>
Config<Scalar> random_config(Rng& rng, const SpacePtr<Scalar>& space, const ProductBall<Scalar>& domain, int arity,
                             const MapParams& p) {
  std::vector<DilationMap<Scalar>> maps;
  for (int i = 0; i < arity; ++i) maps.push_back(random_map<Scalar>(rng, space->blocks, p));
  return make_config(space, domain, std::move(maps));
}

template <class Scalar>
DilationMap<Scalar> random_disk(Rng& rng, const SpacePtr<Scalar>& space, const ProductBall<Scalar>& domain,
                                const DiskParams& p) {
  const auto& blocks = *space->blocks;
  std::vector<Scalar> scales;
  Vec<Scalar> target = domain.center;
  for (int k = 0; k < blocks.coarse_count(); ++k) {
    Scalar s = quantize<Scalar>(log_uniform(rng, p.radius_lo, p.radius_hi), p.den);
    if (!(s > 0)) s = Scalar(1) / Scalar(p.den);
    scales.push_back(s);
    const auto& axes = blocks.coarse(k);
    const double radius = to_double(domain.radii[k]) * p.center_fraction;
    std::vector<double> offset(axes.size());
    for (;;) {
      double norm2 = 0;
      for (auto& o : offset) {
        o = uniform(rng, -1, 1);
        norm2 += o * o;
      }
      if (norm2 < 1) break;
    }
    for (std::size_t a = 0; a < axes.size(); ++a)
      target(axes[a]) = domain.center(axes[a]) + quantize<Scalar>(offset[a] * radius, p.den);
  }
  DilationMap<Scalar> f = DilationMap<Scalar>::dilation(space->blocks, std::move(scales), Vec<Scalar>::Zero(blocks.dimension()));
  if (p.rotate) f.ortho = random_ortho<Scalar>(rng, blocks);
  // Choose t so that f(center of S) lands on the sampled target.
  f.translation = target - f.apply(domain.center);
  return f;
}

template <class Scalar>
std::optional<Config<Scalar>> random_member(Rng& rng, const SpacePtr<Scalar>& space, const ProductBall<Scalar>& domain,
                                            int arity, MembershipLevel level, const DiskParams& p, int* rejections) {
  int rejected = 0;
  auto finish = [&](std::optional<Config<Scalar>> out) {
    if (rejections) *rejections = rejected;
    return out;
  };
  Config<Scalar> x = nullary(space, domain);
  int stalled = 0;
  while (x.arity() < arity) {
    Config<Scalar> candidate = x;
    candidate.maps.push_back(random_disk(rng, space, domain, p));
    if (validate(candidate, level).valid) {
      x = std::move(candidate);
      stalled = 0;
      continue;
    }
    if (++rejected >= p.max_rejections) return finish(std::nullopt);
    // A crowded partial configuration can make the next slot unplaceable; restart.
    if (++stalled > 200) {
      x = nullary(space, domain);
      stalled = 0;
    }
  }
  return finish(x);
}

template <class Scalar>
std::optional<std::pair<Config<Scalar>, Config<Scalar>>> random_star_pair(Rng& rng, const SpacePtr<Scalar>& space,
                                                                          const ProductBall<Scalar>& domain,
                                                                          int max_arity, const DiskParams& p) {
  auto x = random_member(rng, space, domain, uniform_int(rng, 1, max_arity), MembershipLevel::Star, p);
  if (!x) return std::nullopt;
  if (uniform_int(rng, 0, 1)) {
    auto y = random_member(rng, space, domain, uniform_int(rng, 1, max_arity), MembershipLevel::Star, p);
    if (!y) return std::nullopt;
    return std::make_pair(*x, *y);
  }
  StructureMap alpha{x->arity(), {}};
  for (int k = uniform_int(rng, 1, max_arity); k > 0; --k) alpha.alpha.push_back(uniform_int(rng, 0, x->arity() - 1));
  std::vector<Config<Scalar>> q;
  DiskParams inner = p;
  inner.radius_hi = std::max(p.radius_lo * 1.5, 0.6);
  for (int j = 0; j < x->arity(); ++j) {
    auto qj = random_member(rng, space, domain, static_cast<int>(alpha.fiber(j).size()), MembershipLevel::Star, inner);
    if (!qj) return std::nullopt;
    q.push_back(std::move(*qj));
  }
  return std::make_pair(*x, operad_compose(*x, alpha, q));
}

template <class Scalar>
std::optional<std::pair<Config<Scalar>, Config<Scalar>>> random_separated_pair(Rng& rng, const SpacePtr<Scalar>& space,
                                                                               const ProductBall<Scalar>& domain,
                                                                               int max_arity) {
  if (space->blocks->coarse_count() != 1) throw DomainError("separated pairs need a spherical space");
  if (!domain.is_origin_centered()) throw DomainError("separated pairs need an origin-centered domain");
  DiskParams p;
  p.radius_lo = 0.01;
  p.radius_hi = 0.12;
  auto x = random_member(rng, space, domain, uniform_int(rng, 1, max_arity), MembershipLevel::Separated, p);
  if (!x || !validate(right_scale(*x, space->settings.separation), MembershipLevel::Star).valid) return std::nullopt;
  const auto& axes = space->blocks->coarse(0);
  const double R = to_double(domain.radii[0]);
  const auto big_domain = enlarge(domain, space->settings.separation);
  std::vector<ProductBall<Scalar>> xb, big_y;
  for (int k = 0; k < x->arity(); ++k) xb.push_back(x->component_ball(k));
  std::vector<bool> covered(x->arity(), false);
  Config<Scalar> y = nullary(space, domain);
  const int target = uniform_int(rng, x->arity(), x->arity() + 3);
  for (int attempt = 0; attempt < 40 * target && y.arity() < target; ++attempt) {
    // Prefer uncovered x-disks so the correspondence hypothesis can hold.
    int i = uniform_int(rng, 0, x->arity() - 1);
    for (int k = 0; k < x->arity(); ++k)
      if (!covered[(i + k) % x->arity()]) {
        i = (i + k) % x->arity();
        break;
      }
    const double ri = to_double(x->maps[i].scales[0]) * R;
    // Half the time a small disk, so clusters of y-disks nest inside one x-disk.
    const double rj = ri * (uniform(rng, 0, 1) < 0.5 ? log_uniform(rng, 0.08, 0.3) : log_uniform(rng, 0.15, 2.5));
    // Put the center of y_j at distance < ri + rj from the center of x_i.
    const Vec<Scalar> ci = x->maps[i].apply(domain.center);
    const double reach = (ri + rj) * uniform(rng, 0.0, 0.95);
    std::vector<double> dir(axes.size());
    double norm = 0;
    for (auto& v : dir) {
      v = uniform(rng, -1, 1);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm < 1e-9) continue;
    Vec<Scalar> target_center = ci;
    for (std::size_t a = 0; a < axes.size(); ++a)
      target_center(axes[a]) += quantize<Scalar>(dir[a] / norm * reach, 4096);
    Scalar s = quantize<Scalar>(rj / R, 4096);
    if (!(s > 0)) continue;
    auto f = DilationMap<Scalar>::dilation(space->blocks, {s}, Vec<Scalar>::Zero(space->dimension()));
    f.ortho = random_ortho<Scalar>(rng, *space->blocks);
    f.translation = target_center - f.apply(domain.center);
    // Only the new disk needs checking: its enlargement must fit and avoid the others'.
    const auto big = image(f, big_domain);
    if (!contains(big, domain, space->tol)) continue;
    bool apart = true;
    for (const auto& other : big_y) apart = apart && disjoint(big, other, space->tol);
    if (!apart) continue;
    const auto img = image(f, domain);
    bool meets = false;
    for (int k = 0; k < x->arity(); ++k)
      if (!disjoint(xb[k], img, space->tol)) {
        meets = true;
        covered[k] = true;
      }
    if (!meets) continue;
    y.maps.push_back(f);
    big_y.push_back(big);
  }
  for (bool c : covered)
    if (!c) return std::nullopt;
  if (y.arity() == 0) return std::nullopt;
  return std::make_pair(*x, y);
}

namespace {

template <class Scalar>
Vec<Scalar> random_direction(Rng& rng, int d) {
  Vec<Scalar> v(d);
  for (int a = 0; a < d; ++a) v(a) = quantize<Scalar>(uniform(rng, -1, 1), 256);
  return v;
}

template <class Scalar>
Scalar norm2(const Vec<Scalar>& v) {
  Scalar s = 0;
  for (Eigen::Index a = 0; a < v.size(); ++a) s += v(a) * v(a);
  return s;
}

}  // namespace

template <class Scalar>
CriticalDisks<Scalar> random_critical_disks(Rng& rng, const BlocksPtr& blocks, double lambda_lo, double lambda_hi) {
  if (blocks->coarse_count() != 1) throw DomainError("critical disks need a spherical space");
  const int d = blocks->dimension();
  CriticalDisks<Scalar> out;
  out.lambda = quantize<Scalar>(uniform(rng, lambda_lo, lambda_hi), 64);
  if (!(out.lambda > 1)) out.lambda = Scalar(lambda_lo);
  const Scalar r1 = quantize<Scalar>(log_uniform(rng, 0.05, 1.0), 1024) + Scalar(1) / 1024;
  const Scalar r2 = quantize<Scalar>(log_uniform(rng, 0.05, 1.0), 1024) + Scalar(1) / 1024;
  const Vec<Scalar> c1 = random_direction<Scalar>(rng, d);
  // Push c2 away from c1 until the lambda-enlarged disks are disjoint.
  Vec<Scalar> dir = random_direction<Scalar>(rng, d);
  while (norm2(dir) == 0) dir = random_direction<Scalar>(rng, d);
  const Scalar need = out.lambda * (r1 + r2);
  Scalar step = quantize<Scalar>(to_double(need) / std::sqrt(to_double(norm2(dir))) * uniform(rng, 1.0, 1.6), 1024);
  while (norm2(Vec<Scalar>(dir * step)) < need * need) step += Scalar(1) / 64;
  const Vec<Scalar> c2 = c1 + dir * step;
  // A point strictly inside each y-disk.
  auto inside = [&](const Vec<Scalar>& c, const Scalar& r) {
    Vec<Scalar> off = random_direction<Scalar>(rng, d);
    const double len = std::sqrt(to_double(norm2(off)));
    if (len > 0) off *= quantize<Scalar>(to_double(r) * uniform(rng, 0, 0.95) / len, 4096);
    return norm2(off) < r * r ? Vec<Scalar>(c + off) : c;
  };
  const Vec<Scalar> p1 = inside(c1, r1), p2 = inside(c2, r2);
  Vec<Scalar> c = (p1 + p2) / Scalar(2);
  const double spread = std::sqrt(to_double(norm2(Vec<Scalar>(p1 - p2))));
  for (int a = 0; a < d; ++a) c(a) += quantize<Scalar>(spread * uniform(rng, -0.5, 0.5), 1024);
  const Scalar far = std::max(norm2(Vec<Scalar>(c - p1)), norm2(Vec<Scalar>(c - p2)));
  const Scalar rx = sqrt_upper(far) * (1 + quantize<Scalar>(uniform(rng, 0.001, 0.5), 1024) + Scalar(1) / 4096);
  out.x = DilationMap<Scalar>::dilation(blocks, {rx}, c);
  out.y1 = DilationMap<Scalar>::dilation(blocks, {r1}, c1);
  out.y2 = DilationMap<Scalar>::dilation(blocks, {r2}, c2);
  return out;
}

#define DISKOP_INSTANTIATE(S)                                                                                   \
  template Mat<S> random_ortho<S>(Rng&, const BlockStructure&);                                                 \
  template DilationMap<S> random_map<S>(Rng&, const BlocksPtr&, const MapParams&);                              \
  template Config<S> random_config<S>(Rng&, const SpacePtr<S>&, const ProductBall<S>&, int, const MapParams&);  \
  template DilationMap<S> random_disk<S>(Rng&, const SpacePtr<S>&, const ProductBall<S>&, const DiskParams&);   \
  template std::optional<Config<S>> random_member<S>(Rng&, const SpacePtr<S>&, const ProductBall<S>&, int,      \
                                                     MembershipLevel, const DiskParams&, int*);           \
  template std::optional<std::pair<Config<S>, Config<S>>> random_star_pair<S>(                                  \
      Rng&, const SpacePtr<S>&, const ProductBall<S>&, int, const DiskParams&);                                 \
  template std::optional<std::pair<Config<S>, Config<S>>> random_separated_pair<S>(                             \
      Rng&, const SpacePtr<S>&, const ProductBall<S>&, int);                                                     \
  template CriticalDisks<S> random_critical_disks<S>(Rng&, const BlocksPtr&, double, double);

DISKOP_INSTANTIATE(double)
DISKOP_INSTANTIATE(Rational)

}  // namespace diskop
