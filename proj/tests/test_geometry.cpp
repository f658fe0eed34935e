#include "doctest.h"
#include "support.hpp"

#include "diskop/error.hpp"

using namespace diskop;
using namespace diskop::test;

TEST_SUITE("geometry") {

TEST_CASE("scalars parse exactly and print canonically") {
  CHECK(q("0.25") == Q(1) / 4);
  CHECK(q("-3/6") == Q(-1) / 2);
  CHECK(q("1e-2") == Q(1) / 100);
  CHECK(q("7") == Q(7));
  CHECK(format_scalar(q("2/4")) == "1/2");
  CHECK(parse_scalar<double>("1/4") == doctest::Approx(0.25));
  CHECK_THROWS_AS(parse_scalar<Q>("abc"), UsageError);
  CHECK_THROWS_AS(parse_scalar<Q>("1/0"), DomainError);
  CHECK(*exact_sqrt(q("9/16")) == q("3/4"));
  CHECK_FALSE(exact_sqrt(Q(2)).has_value());
  const Q up = sqrt_upper(Q(2));
  CHECK(up * up >= 2);
  CHECK(up - Q(1414213562) / Q(1000000000) < Q(1) / Q(1000000));
}

TEST_CASE("block structures validate their partitions") {
  CHECK_NOTHROW(BlockStructure(3, {{0, 1}, {2}}, {{0}, {1}, {2}}));
  CHECK_THROWS_AS(BlockStructure(3, {{0, 1}, {2}}, {{0, 2}, {1}}), DomainError);  // fine straddles
  CHECK_THROWS_AS(BlockStructure(3, {{0, 1}}, {{0, 1}}), DomainError);            // axis missing
  CHECK_THROWS_AS(BlockStructure(2, {{0, 1}, {1}}, {{0}, {1}}), DomainError);     // overlap
  auto sum = direct_sum(*BlockStructure::spherical(2), *BlockStructure::spherical(1));
  CHECK(sum->coarse_count() == 2);
  CHECK(sum->coarse(1) == AxisList{2});
}

TEST_CASE("map composition") {
  auto space = plain_space<Q>(2);
  const auto f = disk<Q>(space, q("1/2"), q("0.4"), 0);
  const auto g = disk<Q>(space, q("1/5"), 0, 0);
  const auto id = DilationMap<Q>::identity(space->blocks);
  CHECK(equal(f * id, f, space->tol));
  const auto fg = f * g;
  CHECK(fg.scales[0] == q("1/10"));
  CHECK(fg.translation == vec<Q>({q("0.4"), 0}));
  CHECK(same_affine_action(fg, disk<Q>(space, q("0.1"), q("0.4"), 0)));
  CHECK(equal((f * g) * invert(g), f, space->tol));
}

TEST_CASE("map inversion") {
  auto space = plain_space<Q>(2);
  const auto id = DilationMap<Q>::identity(space->blocks);
  CHECK(equal(invert(id), id, space->tol));
  const auto f = disk<Q>(space, q("0.5"), q("0.4"), 0);
  const auto inv = invert(f);
  CHECK(inv.scales[0] == 2);
  CHECK(inv.translation == vec<Q>({q("-0.8"), 0}));
  CHECK(same_affine_action(f * inv, id));
  CHECK(same_affine_action(inv * f, id));
  CHECK(equal(invert(inv), f, space->tol));
}

TEST_CASE("ball images") {
  auto space = plain_space<Q>(2);
  const auto unit = ProductBall<Q>::unit(space->blocks);
  CHECK(equal(image(DilationMap<Q>::identity(space->blocks), unit), unit, space->tol));
  const auto b = image(disk<Q>(space, q("0.5"), q("0.4"), 0), unit);
  CHECK(b.center == vec<Q>({q("0.4"), 0}));
  CHECK(b.radii[0] == q("0.5"));
  auto rot = DilationMap<Q>::identity(space->blocks);
  rot.ortho << 0, -1, 1, 0;
  CHECK(equal(image(rot, unit), unit, space->tol));
}

TEST_CASE("ball images match sampled boundary points") {
  auto space = plain_space<double>(2, Tolerance<double>{1e-9});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = DilationMap<double>::dilation(space->blocks, {0.1 + std::abs(u(rng))}, vec<double>({u(rng), u(rng)}));
    const double th = 3.14159 * u(rng);
    f.ortho << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    ProductBall<double> ball = ProductBall<double>::centered(space->blocks, {0.5 + std::abs(u(rng))});
    ball.center = vec<double>({u(rng), u(rng)});
    const auto img = image(f, ball);
    for (int k = 0; k < 128; ++k) {
      const double phi = 2 * std::numbers::pi * k / 128;
      Vec<double> p = ball.center + ball.radii[0] * vec<double>({std::cos(phi), std::sin(phi)});
      const double dist = (f.apply(p) - img.center).norm();
      CHECK(dist == doctest::Approx(img.radii[0]).epsilon(1e-12));
    }
  }
}

TEST_CASE("ball relations") {
  auto space = plain_space<Q>(2);
  auto ball = [&](Q x, Q y, Q r) {
    auto b = ProductBall<Q>::centered(space->blocks, {r});
    b.center = vec<Q>({x, y});
    return b;
  };
  const auto unit = ball(0, 0, 1);
  auto rel = ball_relations(unit, unit, space->tol);
  CHECK(rel.contains);
  CHECK_FALSE(rel.disjoint);
  CHECK(contains(ball(q("0.4"), 0, q("0.5")), unit, space->tol));
  CHECK(disk_inside(0.4, 0, 0.5, 0, 0, 1));
  CHECK(contains(ball(q("0.5"), 0, q("0.5")), unit, space->tol));  // internally tangent
  CHECK(disjoint(ball(q("-0.5"), 0, q("0.3")), ball(q("0.5"), 0, q("0.3")), space->tol));
  CHECK(disks_disjoint(-0.5, 0, 0.3, 0.5, 0, 0.3));
  CHECK(disjoint(ball(q("-0.5"), 0, q("0.5")), ball(q("0.5"), 0, q("0.5")), space->tol));  // tangent
  CHECK_FALSE(disjoint(ball(q("-0.5"), 0, q("0.51")), ball(q("0.5"), 0, q("0.5")), space->tol));
}

TEST_CASE("ball relations agree with a distance oracle and are order coherent") {
  auto space = plain_space<Q>(2);
  std::mt19937_64 rng(11);
  std::vector<ProductBall<Q>> balls;
  for (int i = 0; i < 40; ++i) {
    auto b = ProductBall<Q>::centered(space->blocks, {random_positive_q(rng, 12, 8)});
    b.center = vec<Q>({random_q(rng, 12, 8), random_q(rng, 12, 8)});
    balls.push_back(b);
  }
  auto dbl = [](const ProductBall<Q>& b) {
    return std::array<double, 3>{to_double(b.center(0)), to_double(b.center(1)), to_double(b.radii[0])};
  };
  for (auto& a : balls)
    for (auto& b : balls) {
      const auto rel = ball_relations(a, b, space->tol);
      const auto da = dbl(a), db = dbl(b);
      const double dist = std::hypot(da[0] - db[0], da[1] - db[1]);
      // Only compare away from the boundary, where double square roots are reliable.
      if (std::abs(dist + da[2] - db[2]) > 1e-9) CHECK(rel.contains == (dist + da[2] < db[2]));
      if (std::abs(dist - da[2] - db[2]) > 1e-9) CHECK(rel.disjoint == (dist > da[2] + db[2]));
      CHECK(rel.disjoint == ball_relations(b, a, space->tol).disjoint);
      if (rel.contains) CHECK(rel.intersects);
      for (auto& c : balls)
        if (rel.contains && contains(b, c, space->tol)) CHECK(contains(a, c, space->tol));
    }
}

TEST_CASE("exact and float predicates agree away from the boundary") {
  auto exact = plain_space<Q>(2);
  auto approx = plain_space<double>(2, Tolerance<double>{1e-9});
  std::mt19937_64 rng(5);
  int compared = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    Q ax = random_q(rng, 40, 20), ay = random_q(rng, 40, 20), ar = random_positive_q(rng, 30, 20);
    Q bx = random_q(rng, 40, 20), by = random_q(rng, 40, 20), br = random_positive_q(rng, 30, 20);
    auto qb = [&](Q x, Q y, Q r) {
      auto b = ProductBall<Q>::centered(exact->blocks, {r});
      b.center = vec<Q>({x, y});
      return b;
    };
    auto fb = [&](Q x, Q y, Q r) {
      auto b = ProductBall<double>::centered(approx->blocks, {to_double(r)});
      b.center = vec<double>({to_double(x), to_double(y)});
      return b;
    };
    const Q d2 = (ax - bx) * (ax - bx) + (ay - by) * (ay - by);
    const Q margin_c = scalar_abs(Q(d2 - (br - ar) * (br - ar)));
    const Q margin_d = scalar_abs(Q(d2 - (ar + br) * (ar + br)));
    if (margin_c < Q(1) / Q(100000000) || margin_d < Q(1) / Q(100000000)) continue;
    const auto re = ball_relations(qb(ax, ay, ar), qb(bx, by, br), exact->tol);
    const auto rf = ball_relations(fb(ax, ay, ar), fb(bx, by, br), approx->tol);
    CHECK(re.contains == rf.contains);
    CHECK(re.disjoint == rf.disjoint);
    ++compared;
  }
  CHECK(compared > 1500);
}

TEST_CASE("group validation") {
  auto blocks = std::make_shared<const BlockStructure>(2, std::vector<AxisList>{{0}, {1}}, std::vector<AxisList>{{0}, {1}});
  Mat<Q> swap(2, 2);
  swap << 0, 1, 1, 0;
  auto rep = make_group<Q>(*blocks, {"e", "s"}, {{0, 1}, {1, 0}}, {Mat<Q>::Identity(2, 2), swap}, {});
  CHECK(rep.coarse_perm[1] == std::vector<int>{1, 0});
  CHECK(rep.inverse == std::vector<int>{0, 1});
  CHECK_THROWS_AS(make_group<Q>(*blocks, {"e", "s"}, {{0, 1}, {1, 1}}, {Mat<Q>::Identity(2, 2), swap}, {}), DomainError);
  Mat<Q> twice(2, 2);
  twice << 2, 0, 0, 2;
  CHECK_THROWS_AS(make_group<Q>(*blocks, {"e", "s"}, {{0, 1}, {1, 0}}, {Mat<Q>::Identity(2, 2), twice}, {}), DomainError);
  // Not a homomorphism: a reflection squared must be the identity matrix, and it is,
  // but assigning the identity element a non-identity matrix breaks e*e = e.
  CHECK_THROWS_AS(make_group<Q>(*blocks, {"e", "s"}, {{0, 1}, {1, 0}}, {swap, swap}, {}), DomainError);
}

TEST_CASE("conjugation is a group action") {
  auto blocks = std::make_shared<const BlockStructure>(2, std::vector<AxisList>{{0}, {1}}, std::vector<AxisList>{{0}, {1}});
  // Dihedral group of the square acting by signed permutations.
  std::vector<Mat<Q>> mats;
  for (int swap = 0; swap < 2; ++swap)
    for (int sx : {1, -1})
      for (int sy : {1, -1}) {
        Mat<Q> m = Mat<Q>::Zero(2, 2);
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
  for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  auto rep = make_group<Q>(*blocks, labels, table, mats, {});
  auto f = DilationMap<Q>::dilation(blocks, {q("1/2"), q("1/3")}, vec<Q>({q("1/4"), q("-1/5")}));
  for (int g = 0; g < n; ++g) {
    CHECK(equal(conjugate(rep, g, conjugate(rep, rep.inverse[g], f)), f, Tolerance<Q>{}));
    for (int h = 0; h < n; ++h)
      CHECK(equal(conjugate(rep, table[g][h], f), conjugate(rep, g, conjugate(rep, h, f)), Tolerance<Q>{}));
    // Oracle: conjugation acts pointwise as v -> M f(M^T v).
    Vec<Q> p = vec<Q>({q("2/7"), q("-3/11")});
    CHECK(conjugate(rep, g, f).apply(p) == Vec<Q>(mats[g] * f.apply(mats[g].transpose() * p)));
  }
  CHECK(equal(conjugate(rep, rep.identity, f), f, Tolerance<Q>{}));
  // A swap-symmetric map is fixed by the coordinate swap.
  auto sym = DilationMap<Q>::dilation(blocks, {q("1/2"), q("1/2")}, vec<Q>({0, 0}));
  for (int g = 0; g < n; ++g) CHECK(equal(conjugate(rep, g, sym), sym, Tolerance<Q>{}));
}

TEST_CASE("right cosets") {
  // Z/4 with subgroup {0,2}.
  std::vector<std::vector<int>> table(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) table[a][b] = (a + b) % 4;
  CHECK(is_subgroup(table, {0, 2}));
  CHECK_FALSE(is_subgroup(table, {0, 1}));
  auto cosets = right_cosets(table, {0, 2});
  REQUIRE(cosets.size() == 2);
  CHECK(cosets[0] == std::vector<int>{0, 2});
  CHECK(cosets[1] == std::vector<int>{1, 3});
}

}
