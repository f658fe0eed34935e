#include "diskop/flows.hpp"

#include "diskop/error.hpp"

#include <algorithm>

namespace diskop {

namespace {

template <class Scalar>
Scalar root(const Scalar& d2) {
  if constexpr (is_exact_v<Scalar>) {
    auto r = exact_sqrt(d2);
    if (!r) throw DomainError("irrational entry time: a distance is not rational (use float mode)");
    return *r;
  } else {
    return std::sqrt(d2);
  }
}

template <class Scalar>
Scalar block_norm2(const Vec<Scalar>& v, const BlockStructure& blocks, int k) {
  Scalar s = 0;
  for (int axis : blocks.coarse(k)) s += v(axis) * v(axis);
  return s;
}

}  // namespace

const char* flow_name(FlowKind kind) {
  switch (kind) {
    case FlowKind::ShrinkLeft: return "shrink-left";
    case FlowKind::ShrinkRight: return "shrink-right";
    case FlowKind::ShrinkRightProduct: return "shrink-right-product";
  }
  return "?";
}

FlowKind parse_flow(const std::string& name) {
  for (auto kind : {FlowKind::ShrinkLeft, FlowKind::ShrinkRight, FlowKind::ShrinkRightProduct})
    if (name == flow_name(kind)) return kind;
  throw DomainError("unknown flow '" + name + "' (shrink-left, shrink-right, shrink-right-product)");
}

template <class Scalar>
Config<Scalar> flow_apply(const Config<Scalar>& x, FlowKind kind, const Scalar& t) {
  if (!(t >= 0) || !(t < 1)) throw DomainError("flow parameter t must lie in [0, 1)");
  const Scalar s = 1 - t;
  switch (kind) {
    case FlowKind::ShrinkLeft: {
      auto out = x;
      const auto left = DilationMap<Scalar>::scaling(x.space->blocks, s);
      for (auto& f : out.maps) f = compose(left, f);
      return out;
    }
    case FlowKind::ShrinkRightProduct:
      if (!x.space->is_product()) throw DomainError("shrink-right-product needs a product space");
      [[fallthrough]];
    case FlowKind::ShrinkRight:
      return right_scale(x, s);
  }
  throw DomainError("unknown flow");
}

template <class Scalar>
bool in_target(const Config<Scalar>& x, FlowKind kind, const ProductBall<Scalar>& inner,
               const ProductBall<Scalar>& outer) {
  const auto& rep = x.space->group;
  const auto& tol = x.tol();
  const int groups = static_cast<int>(rep.table.size());
  for (int g = 0; g < groups; ++g) {
    std::vector<ProductBall<Scalar>> balls;
    for (int i = 0; i < x.arity(); ++i) {
      const auto f = conjugate(rep, g, x.maps[i]);
      balls.push_back(image(f, kind == FlowKind::ShrinkLeft ? inner : outer));
      if (!contains(balls.back(), kind == FlowKind::ShrinkLeft ? inner : outer, tol)) return false;
    }
    if (kind == FlowKind::ShrinkLeft) continue;
    for (int i = 0; i < x.arity(); ++i)
      for (int j = i + 1; j < x.arity(); ++j)
        if (!disjoint(balls[i], balls[j], tol)) return false;
  }
  return true;
}

template <class Scalar>
EntryTimeReport<Scalar> entry_time(const Config<Scalar>& x, FlowKind kind, const ProductBall<Scalar>& inner,
                                   const ProductBall<Scalar>& outer) {
  const auto& tol = x.tol();
  const auto& blocks = *x.space->blocks;
  if (!inner.is_origin_centered() || !outer.is_origin_centered())
    throw DomainError("entry time: target balls must be centred at the origin");
  if (!contains(inner, outer, tol)) throw DomainError("entry time: the inner ball B is not contained in B'");
  const bool left = kind == FlowKind::ShrinkLeft;
  if (kind == FlowKind::ShrinkRightProduct && !x.space->is_product())
    throw DomainError("shrink-right-product needs a product space");
  if (!equal(x.domain, left ? outer : inner, tol))
    throw DomainError(std::string("entry time: x must live on ") + (left ? "B'" : "B"));
  if (!validate(x, MembershipLevel::Star).valid) throw DomainError("entry time: x is not star");

  EntryTimeReport<Scalar> report{Scalar(0), kind, std::nullopt,
                                 left ? "images of B inside B" : "images of B' pairwise disjoint inside B'"};
  auto offer = [&](const Scalar& t, BindingConstraint why) {
    if (t > report.t) {
      report.t = t;
      report.binding = std::move(why);
    }
  };
  const auto& rep = x.space->group;
  const int groups = static_cast<int>(rep.table.size());
  for (int g = 0; g < groups; ++g) {
    std::vector<DilationMap<Scalar>> maps;
    for (const auto& f : x.maps) maps.push_back(conjugate(rep, g, f));
    if (left) {
      // (1-t)(|c| + r) <= eps on every block.
      for (int i = 0; i < x.arity(); ++i) {
        const auto b = image(maps[i], inner);
        for (int k = 0; k < blocks.coarse_count(); ++k)
          offer(1 - inner.radii[k] / (root(block_norm2(b.center, blocks, k)) + b.radii[k]), {"contained", g, i, -1, k});
      }
      continue;
    }
    std::vector<ProductBall<Scalar>> balls;
    for (const auto& f : maps) balls.push_back(image(f, outer));
    // Some block with |c_i - c_j| >= (1-t)(r_i + r_j): the pair needs the least t over blocks.
    for (int i = 0; i < x.arity(); ++i)
      for (int j = i + 1; j < x.arity(); ++j) {
        std::optional<Scalar> best;
        int best_block = 0;
        for (int k = 0; k < blocks.coarse_count(); ++k) {
          const Scalar d = root(block_norm2(Vec<Scalar>(balls[i].center - balls[j].center), blocks, k));
          const Scalar t = 1 - d / (balls[i].radii[k] + balls[j].radii[k]);
          if (!best || t < *best) {
            best = t;
            best_block = k;
          }
        }
        if (best) offer(*best, {"disjoint", g, i, j, best_block});
      }
    // |c_i| + (1-t) r_i <= eps' on every block.
    for (int i = 0; i < x.arity(); ++i)
      for (int k = 0; k < blocks.coarse_count(); ++k)
        offer(1 - (outer.radii[k] - root(block_norm2(balls[i].center, blocks, k))) / balls[i].radii[k],
              {"contained", g, i, -1, k});
  }

  if (!(report.t < 1)) throw DomainError("entry time: the target is never reached");
  const auto in = [&](const Scalar& t) {
    auto y = flow_apply(x, kind, t);
    return in_target(y, kind, inner, outer);
  };
  if (!in(report.t) || !in((report.t + 1) / 2))
    throw InvariantError("entry time: flow is not in the target at t = " + format_scalar(report.t));
  return report;
}

template <class Scalar>
SphericalRescale<Scalar> spherical_rescale(const Config<Scalar>& x) {
  SphericalRescale<Scalar> out;
  out.retracted = x;
  for (std::size_t i = 0; i < x.maps.size(); ++i) {
    const auto& s = x.maps[i].scales;
    const Scalar least = *std::min_element(s.begin(), s.end());
    std::vector<Scalar> lambda;
    for (const auto& v : s) lambda.push_back(least / v);
    out.retracted.maps[i] = rescale_right(x.maps[i], lambda);
    out.lambda.push_back(std::move(lambda));
  }
  return out;
}

template <class Scalar>
CoreEntry<Scalar> core_entry_time(const SuperTree<Scalar>& tree) {
  const auto w = tree_evaluate(tree);
  if (!validate(w, MembershipLevel::Star).valid) throw DomainError("core entry time: the tree's value is not star");
  const auto& settings = w.space->settings;
  Scalar gap = settings.shrink;
  std::string last;
  for (int k = 0; k <= settings.step_cap; ++k, gap /= 2) {
    const Scalar t = 1 - gap;
    auto shrunk = flow_apply(w, FlowKind::ShrinkRightProduct, t);
    if (!shrunk_membership(shrunk, settings.shrink)) {
      last = "not shrunk";
      continue;
    }
    auto c = criticality(shrunk);
    if (c.witness) return CoreEntry<Scalar>{t, k, std::move(shrunk), std::move(*c.witness)};
    last = c.reason;
  }
  throw DomainError("core entry time: step cap " + std::to_string(settings.step_cap) +
                    " exhausted; last state at t = 1 - " + format_scalar(gap * 2) + ": " + last);
}

#define DISKOP_INSTANTIATE(S)                                                                                      \
  template Config<S> flow_apply(const Config<S>&, FlowKind, const S&);                                             \
  template bool in_target(const Config<S>&, FlowKind, const ProductBall<S>&, const ProductBall<S>&);               \
  template EntryTimeReport<S> entry_time(const Config<S>&, FlowKind, const ProductBall<S>&, const ProductBall<S>&); \
  template SphericalRescale<S> spherical_rescale(const Config<S>&);                                                \
  template CoreEntry<S> core_entry_time(const SuperTree<S>&);

DISKOP_INSTANTIATE(double)
DISKOP_INSTANTIATE(Rational)

}  // namespace diskop
