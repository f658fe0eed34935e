#include "doctest.h"
#include "support.hpp"

#include "diskop/error.hpp"
#include "diskop/flows.hpp"

using namespace diskop;
using namespace diskop::test;

namespace {

template <class S>
ProductBall<S> origin_ball(const SpacePtr<S>& space, S r) {
  return ProductBall<S>::centered(space->blocks, {r});
}

// Least t in [0, 1) with the flow in the target, by bisection on the predicate.
double bisect(const Config<double>& x, FlowKind kind, const ProductBall<double>& inner, const ProductBall<double>& outer) {
  if (in_target(flow_apply(x, kind, 0.0), kind, inner, outer)) return 0;
  double lo = 0, hi = 1 - 1e-12;
  for (int step = 0; step < 60; ++step) {
    const double mid = (lo + hi) / 2;
    (in_target(flow_apply(x, kind, mid), kind, inner, outer) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

TEST_SUITE("flows") {

TEST_CASE("flow examples") {
  auto space = plain_space<Q>(2);
  const auto x = config(space, {disk<Q>(space, q("1/4"), q("2/5"), 0), disk<Q>(space, q("1/2"), q("-1/4"), q("1/8"))});
  for (auto kind : {FlowKind::ShrinkLeft, FlowKind::ShrinkRight}) CHECK(equal(flow_apply(x, kind, Q(0)), x));
  const auto left = flow_apply(x, FlowKind::ShrinkLeft, q("1/2"));
  const auto b = left.component_ball(0);
  CHECK(b.center == vec<Q>({q("1/5"), 0}));
  CHECK(b.radii[0] == q("1/8"));
  const auto right = flow_apply(x, FlowKind::ShrinkRight, q("1/2"));
  CHECK(right.maps[1].scales[0] == q("1/4"));
  CHECK(right.maps[1].translation == x.maps[1].translation);
  CHECK_THROWS_AS(flow_apply(x, FlowKind::ShrinkLeft, Q(1)), DomainError);
  CHECK_THROWS_AS(flow_apply(x, FlowKind::ShrinkRight, q("-1/10")), DomainError);
  CHECK_THROWS_AS(flow_apply(x, FlowKind::ShrinkRightProduct, q("1/10")), DomainError);
  CHECK(parse_flow("shrink-right") == FlowKind::ShrinkRight);
  CHECK_THROWS_AS(parse_flow("grow"), DomainError);
}

TEST_CASE("semigroup law") {
  auto V = plain_space<Q>(2);
  auto VW = product_space(V, plain_space<Q>(1));
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto space = trial % 2 ? V : VW;
    const auto dom = ProductBall<Q>::unit(space->blocks);
    const auto x = random_config(rng, space, dom, uniform_int(rng, 0, 4));
    const Q s = quantize<Q>(uniform(rng, 0, 0.95), 64), u = quantize<Q>(uniform(rng, 0, 0.95), 64);
    const auto kinds = space == V ? std::vector<FlowKind>{FlowKind::ShrinkLeft, FlowKind::ShrinkRight}
                                  : std::vector<FlowKind>{FlowKind::ShrinkLeft, FlowKind::ShrinkRightProduct};
    for (auto kind : kinds)
      CHECK(equal(flow_apply(flow_apply(x, kind, s), kind, u), flow_apply(x, kind, Q(1) - (1 - s) * (1 - u))));
  }
}

TEST_CASE("entry time examples") {
  auto space = plain_space<Q>(2);
  SUBCASE("shrink left") {
    const auto x = make_config(space, origin_ball(space, Q(1)), {disk<Q>(space, q("1/2"), q("2/5"), 0)});
    const auto r = entry_time(x, FlowKind::ShrinkLeft, origin_ball(space, q("1/2")), origin_ball(space, Q(1)));
    CHECK(r.t == q("3/13"));
    REQUIRE(r.binding);
    CHECK(r.binding->what == "contained");
    auto xd = make_config(plain_space<double>(2), ProductBall<double>::unit(BlockStructure::spherical(2)),
                          {DilationMap<double>::dilation(BlockStructure::spherical(2), {0.5}, vec<double>({0.4, 0}))});
    const auto inner = ProductBall<double>::centered(xd.space->blocks, {0.5});
    CHECK(bisect(xd, FlowKind::ShrinkLeft, inner, xd.domain) == doctest::Approx(3.0 / 13).epsilon(1e-6));
    CHECK(entry_time(xd, FlowKind::ShrinkLeft, inner, xd.domain).t == doctest::Approx(3.0 / 13));
  }
  SUBCASE("shrink right") {
    const auto x = make_config(space, origin_ball(space, Q(1)),
                               {disk<Q>(space, q("3/10"), q("1/2"), 0), disk<Q>(space, q("3/10"), q("-1/2"), 0)});
    const auto r = entry_time(x, FlowKind::ShrinkRight, origin_ball(space, Q(1)), origin_ball(space, Q(2)));
    CHECK(r.t == q("1/6"));
    REQUIRE(r.binding);
    CHECK(r.binding->what == "disjoint");
    CHECK(r.binding->i == 0);
    CHECK(r.binding->j == 1);
    CHECK_FALSE(in_target(flow_apply(x, FlowKind::ShrinkRight, q("1/7")), FlowKind::ShrinkRight, origin_ball(space, Q(1)),
                          origin_ball(space, Q(2))));
  }
  SUBCASE("already in the target") {
    const auto x = make_config(space, origin_ball(space, Q(1)), {disk<Q>(space, q("1/10"), 0, 0)});
    const auto r = entry_time(x, FlowKind::ShrinkLeft, origin_ball(space, q("1/2")), origin_ball(space, Q(1)));
    CHECK(r.t == 0);
    CHECK_FALSE(r.binding);
  }
  SUBCASE("preconditions") {
    const auto x = make_config(space, origin_ball(space, Q(1)), {disk<Q>(space, q("1/2"), q("1/3"), q("1/3"))});
    CHECK_THROWS_WITH_AS(entry_time(x, FlowKind::ShrinkLeft, origin_ball(space, q("1/2")), origin_ball(space, Q(1))),
                         doctest::Contains("irrational"), DomainError);
    CHECK_THROWS_AS(entry_time(x, FlowKind::ShrinkLeft, origin_ball(space, Q(2)), origin_ball(space, Q(1))), DomainError);
    CHECK_THROWS_AS(entry_time(x, FlowKind::ShrinkRight, origin_ball(space, q("1/2")), origin_ball(space, Q(1))),
                    DomainError);
  }
}

TEST_CASE("entry time is minimal and the target is forward invariant") {
  auto space = plain_space<double>(2);
  auto VW = product_space(space, plain_space<double>(2));
  Rng rng(99);
  int positive = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto kind = std::array{FlowKind::ShrinkLeft, FlowKind::ShrinkRight, FlowKind::ShrinkRightProduct}[trial % 3];
    const auto sp = kind == FlowKind::ShrinkRightProduct ? VW : space;
    const int blocks = sp->blocks->coarse_count();
    std::vector<double> r_in, r_out;
    for (int k = 0; k < blocks; ++k) {
      r_in.push_back(uniform(rng, 0.3, 0.9));
      r_out.push_back(1.0);
    }
    if (kind != FlowKind::ShrinkLeft)
      for (int k = 0; k < blocks; ++k) r_out[k] = r_in[k] * uniform(rng, 1.1, 3);
    const auto inner = ProductBall<double>::centered(sp->blocks, r_in);
    const auto outer = ProductBall<double>::centered(sp->blocks, r_out);
    DiskParams p;
    p.radius_hi = 0.3;
    const auto x = random_member(rng, sp, kind == FlowKind::ShrinkLeft ? outer : inner, uniform_int(rng, 1, 4),
                                 MembershipLevel::Star, p);
    REQUIRE(x);
    const auto r = entry_time(*x, kind, inner, outer);
    const double oracle = bisect(*x, kind, inner, outer);
    CHECK(r.t == doctest::Approx(oracle).epsilon(1e-6));
    for (int k = 1; k <= 5; ++k) CHECK(in_target(flow_apply(*x, kind, r.t + (1 - r.t) * k / 6), kind, inner, outer));
    if (r.t > 1e-6) {
      ++positive;
      const double before = r.t - uniform(rng, 0.001, 1) * r.t;
      CHECK_FALSE(in_target(flow_apply(*x, kind, before), kind, inner, outer));
    }
  }
  CHECK(positive > 100);
}

TEST_CASE("spherical rescale") {
  auto space = make_space<Q>(BlockStructure::axial(3), trivial_group<Q>(*BlockStructure::axial(3)));
  const auto dom = ProductBall<Q>::unit(space->blocks);
  auto make = [&](std::vector<Q> s) { return DilationMap<Q>::dilation(space->blocks, s, Vec<Q>::Zero(3)); };
  const auto x = make_config(space, dom, {make({3, 1, 2}), make({q("1/2"), q("1/2"), q("1/2")})});
  const auto r = spherical_rescale(x);
  CHECK(r.lambda[0] == std::vector<Q>{q("1/3"), 1, q("1/2")});
  CHECK(r.retracted.maps[0].scales == std::vector<Q>{1, 1, 1});
  CHECK(r.lambda[1] == std::vector<Q>{1, 1, 1});
  CHECK(equal(r.retracted.maps[1], x.maps[1], space->tol));

  auto plane = make_space<Q>(BlockStructure::axial(2), trivial_group<Q>(*BlockStructure::axial(2)));
  const auto y = make_config(plane, ProductBall<Q>::unit(plane->blocks),
                             {DilationMap<Q>::dilation(plane->blocks, {2, 4}, vec<Q>({q("1/8"), 0}))});
  const auto ry = spherical_rescale(y);
  CHECK(ry.lambda[0] == std::vector<Q>{1, q("1/2")});
  CHECK(ry.retracted.maps[0].scales == std::vector<Q>{2, 2});
  CHECK(ry.retracted.maps[0].translation == y.maps[0].translation);

  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto z = random_config(rng, space, dom, uniform_int(rng, 1, 4));
    for (const auto& f : spherical_rescale(z).retracted.maps)
      CHECK((f.scales[0] == f.scales[1] && f.scales[1] == f.scales[2]));
  }
}

TEST_CASE("shrunk membership predicate") {
  auto space = plain_space<Q>(2);
  const Q shrink = q("1/50");
  // Enlarged by 50 the two disks become tangent open disks.
  CHECK(shrunk_membership(config(space, {disk<Q>(space, q("1/500"), q("1/10"), 0), disk<Q>(space, q("1/500"), q("-1/10"), 0)}),
                          shrink));
  CHECK_FALSE(shrunk_membership(
      config(space, {disk<Q>(space, q("1/400"), q("1/10"), 0), disk<Q>(space, q("1/400"), q("-1/10"), 0)}), shrink));
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = *random_member(rng, space, ProductBall<Q>::unit(space->blocks), uniform_int(rng, 0, 4),
                                  MembershipLevel::Star);
    CHECK(shrunk_membership(right_scale(x, shrink), shrink));
    CHECK(shrunk_membership(x, shrink) == shrunk_membership(right_scale(x, shrink), shrink * shrink));
  }
}

TEST_CASE("core entry time") {
  auto V = plain_space<Q>(2), W = plain_space<Q>(2);
  auto VW = product_space(V, W);
  const auto dv = ProductBall<Q>::unit(V->blocks), dw = ProductBall<Q>::unit(W->blocks);
  SUBCASE("disjoint projections enter at the first grid point") {
    const auto t = corolla(VW, config(V, {disk<Q>(V, q("1/5"), q("-1/2"), 0), disk<Q>(V, q("1/5"), q("1/2"), 0)}),
                           config(W, {disk<Q>(W, q("1/5"), 0, 0)}));
    const auto e = core_entry_time(t);
    CHECK(e.t == q("49/50"));
    CHECK(e.steps == 0);
    CHECK(e.witness.P.size() == 2);
    CHECK(e.witness.Q.size() == 1);
  }
  SUBCASE("random trees") {
    Rng rng(31);
    int found = 0, later = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
      const auto t = random_tree(rng, VW, dv, dw);
      try {
        const auto e = core_entry_time(t);
        ++found;
        later += e.steps > 0;
        CHECK(criticality(e.shrunk).witness);
        CHECK(e.t > q("49/50") - Q(0) - q("1/1000000"));
      } catch (const DomainError& err) {
        MESSAGE(err.what());
      }
    }
    CHECK(found >= trials * 99 / 100);
  }
}

}  // TEST_SUITE
