#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "diskop/error.hpp"
#include "diskop/random.hpp"

using namespace diskop;
using namespace diskop::test;

TEST_SUITE("divisibility") {

TEST_CASE("intersection data of the five-disk figure") {
  FiveDisks fig;
  auto data = intersection_data(fig.x, fig.y);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j)
      if (data.relation[i][j]) pairs.emplace_back(i + 1, j + 1);
  CHECK(pairs == std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 2}});
  // Distance oracle on the figure's coordinates.
  CHECK_FALSE(disks_disjoint(-1.5, 0, 1, -0.5, 1, 1));
  CHECK_FALSE(disks_disjoint(1, 1, 1, -0.5, 1, 1));
  CHECK_FALSE(disks_disjoint(0.8, -1.8, 0.7, 1.5, -1, 0.5));
  CHECK(disks_disjoint(1, 1, 1, 1.5, -1, 0.5));
  CHECK(data.image(std::vector<int>{0, 1}) == std::vector<int>{0});
  CHECK(data.image(2) == std::vector<int>{1});
  CHECK(data.preimage(0) == std::vector<int>{0, 1});
  // x1 and x2 are disjoint from each other (distance sqrt(6.25) = 2.5 > 2), x3 is alone too.
  CHECK(data.self_partition == std::vector<std::vector<int>>{{0}, {1}, {2}});
}

TEST_CASE("intersection data trivial cases") {
  auto space = plain_space<Q>(2);
  auto x = config<Q>(space, {disk<Q>(space, q("0.1"), q("-0.5"), 0), disk<Q>(space, q("0.1"), q("0.5"), 0)});
  auto y = config<Q>(space, {disk<Q>(space, q("0.1"), 0, q("0.5")), disk<Q>(space, q("0.1"), 0, q("-0.5"))});
  auto data = intersection_data(x, y);
  for (auto& row : data.relation)
    for (bool b : row) CHECK_FALSE(b);
  auto self = intersection_data(x, x);
  CHECK(self.relation[0][0]);
  CHECK(self.relation[1][1]);
  // The partition uses connected components, not the (non-transitive) relation.
  auto chain = config<Q>(space, {disk<Q>(space, q("0.2"), q("-0.3"), 0), disk<Q>(space, q("0.2"), 0, 0),
                                 disk<Q>(space, q("0.2"), q("0.3"), 0)});
  auto cd = intersection_data(chain, chain);
  CHECK_FALSE(cd.relation[0][2]);
  CHECK(cd.self_partition == std::vector<std::vector<int>>{{0, 1, 2}});
}

TEST_CASE("worked division example") {
  auto space = plain_space<Q>(2);
  auto x = config<Q>(space, {disk<Q>(space, q("0.3"), q("-0.5"), 0), disk<Q>(space, q("0.3"), q("0.5"), 0)});
  auto y = config<Q>(space, {disk<Q>(space, q("0.1"), q("-0.5"), 0)});
  auto div = divides(x, y);
  REQUIRE(div.has_value());
  CHECK(div->alpha.alpha == std::vector<int>{0});
  REQUIRE(div->quotients.size() == 2);
  REQUIRE(div->quotients[0].arity() == 1);
  CHECK(div->quotients[0][0].scales[0] == q("1/3"));
  CHECK(div->quotients[0][0].translation == vec<Q>({0, 0}));
  CHECK(div->quotients[1].arity() == 0);
  CHECK(equal(operad_compose(x, div->alpha, div->quotients), y));
}

TEST_CASE("division trivial and negative cases") {
  auto space = plain_space<Q>(2);
  auto x = config<Q>(space, {disk<Q>(space, q("0.3"), q("-0.5"), 0), disk<Q>(space, q("0.3"), q("0.5"), 0)});
  auto self = divides(x, x);
  REQUIRE(self.has_value());
  CHECK(self->alpha.alpha == std::vector<int>{0, 1});
  for (auto& qj : self->quotients) CHECK(equal(qj, unit(space, x.domain)));
  auto straddle = config<Q>(space, {disk<Q>(space, q("0.3"), 0, 0)});
  CHECK_FALSE(divides(x, straddle).has_value());
  CHECK(admissible_structure_maps(x, straddle).empty());
}

TEST_CASE("divides agrees with exhaustive search") {
  Rng rng(2024);
  auto space = plain_space<Q>(2);
  auto domain = ProductBall<Q>::unit(space->blocks);
  int found = 0, total = 0;
  while (total < 150) {
    auto pair = random_star_pair(rng, space, domain, 3);
    if (!pair) continue;
    ++total;
    auto [x, y] = *pair;
    auto div = divides(x, y);
    auto all = admissible_structure_maps(x, y);
    CHECK(div.has_value() == !all.empty());
    if (div && !all.empty()) {
      CHECK(div->alpha.alpha == all.front().alpha);
      CHECK(equal(operad_compose(x, div->alpha, div->quotients), y));
      ++found;
    }
  }
  CHECK(found > 30);
}

TEST_CASE("equivariant divisibility") {
  Rng rng(99);
  auto space = dihedral_space<Q>();
  auto domain = ProductBall<Q>::unit(space->blocks);
  std::vector<int> all(space->group.order());
  for (int g = 0; g < space->group.order(); ++g) all[g] = g;
  int checked = 0;
  while (checked < 60) {
    auto pair = random_star_pair(rng, space, domain, 3);
    if (!pair) continue;
    ++checked;
    auto [x, y] = *pair;
    auto plain = divides(x, y);
    auto full = divides(x, y, all);
    REQUIRE(plain.has_value() == full.has_value());
    if (plain) CHECK(plain->alpha.alpha == full->alpha.alpha);
    auto trivial = divides(x, y, std::vector<int>{space->group.identity});
    CHECK(trivial.has_value() == plain.has_value());
    CHECK(plain.has_value() == !admissible_structure_maps(x, y).empty());
  }
}

TEST_CASE("non-invariant domains fall back to checking every group element") {
  auto space = swap_space<Q>();
  auto domain = ProductBall<Q>::unit(space->blocks);
  domain.center = vec<Q>({q("0.3"), 0});
  auto big = DilationMap<Q>::dilation(space->blocks, {q("0.5"), q("0.5")}, vec<Q>({q("0.55"), q("0.5")}));
  auto small = DilationMap<Q>::dilation(space->blocks, {q("0.1"), q("0.1")}, vec<Q>({q("0.8"), q("0.5")}));
  auto x = make_config(space, domain, {big});
  auto y = make_config(space, domain, {small});
  CHECK_THROWS_AS(divides(x, y, std::vector<int>{0, 1}), DomainError);
  auto div = divides(x, y);
  CHECK(div.has_value() == !admissible_structure_maps(x, y).empty());
}

TEST_CASE("left cancellation") {
  Rng rng(17);
  auto space = plain_space<Q>(2);
  auto domain = ProductBall<Q>::unit(space->blocks);
  int done = 0;
  while (done < 80) {
    auto x = random_member(rng, space, domain, uniform_int(rng, 1, 3), MembershipLevel::Star);
    if (!x) continue;
    StructureMap alpha{x->arity(), {}};
    for (int k = uniform_int(rng, 0, 3); k > 0; --k) alpha.alpha.push_back(uniform_int(rng, 0, x->arity() - 1));
    std::vector<Config<Q>> q;
    bool ok = true;
    for (int j = 0; j < x->arity() && ok; ++j) {
      auto qj = random_member(rng, space, domain, static_cast<int>(alpha.fiber(j).size()), MembershipLevel::Star);
      ok = qj.has_value();
      if (ok) q.push_back(*qj);
    }
    if (!ok) continue;
    ++done;
    auto y = operad_compose(*x, alpha, q);
    auto back = left_cancel(*x, y, alpha);
    REQUIRE(back.has_value());
    for (int j = 0; j < x->arity(); ++j) CHECK(equal((*back)[j], q[j]));
  }
  auto id = unit(space, domain);
  auto y = random_member(rng, space, domain, 2, MembershipLevel::Star);
  REQUIRE(y);
  auto back = left_cancel(id, *y, StructureMap{1, {0, 0}});
  REQUIRE(back);
  CHECK(equal((*back)[0], *y));
  // Sending a component into a slot whose ball does not contain it fails.
  auto x = config<Q>(space, {disk<Q>(space, q("0.2"), q("-0.5"), 0), disk<Q>(space, q("0.2"), q("0.5"), 0)});
  auto z = config<Q>(space, {disk<Q>(space, q("0.1"), q("-0.5"), 0)});
  CHECK(left_cancel(x, z, StructureMap{2, {0}}).has_value());
  CHECK_FALSE(left_cancel(x, z, StructureMap{2, {1}}).has_value());
}

TEST_CASE("divisor transitivity") {
  Rng rng(5);
  auto space = plain_space<Q>(2);
  auto domain = ProductBall<Q>::unit(space->blocks);
  int chains = 0;
  for (int trial = 0; trial < 400 && chains < 30; ++trial) {
    auto p1 = random_star_pair(rng, space, domain, 3);
    if (!p1) continue;
    auto [x, y] = *p1;
    auto d1 = divides(x, y);
    if (!d1) continue;
    // Build z below y by composing y with random star quotients.
    std::vector<Config<Q>> q;
    bool ok = true;
    for (int j = 0; j < y.arity() && ok; ++j) {
      auto qj = random_member(rng, space, domain, uniform_int(rng, 0, 2), MembershipLevel::Star);
      ok = qj.has_value();
      if (ok) q.push_back(*qj);
    }
    if (!ok) continue;
    auto z = compose(y, q);
    auto d2 = divides(y, z);
    REQUIRE(d2);
    // Composite division along alpha1 o alpha2.
    StructureMap alpha{x.arity(), {}};
    for (int a : d2->alpha.alpha) alpha.alpha.push_back(d1->alpha.alpha[a]);
    auto direct = divides(x, z);
    REQUIRE(direct.has_value());
    CHECK(equal(operad_compose(x, direct->alpha, direct->quotients), z));
    // The composite structure map itself yields admissible quotients.
    auto composite = candidate_quotients(x, z, alpha);
    CHECK(equal(operad_compose(x, alpha, composite), z));
    for (auto& qj : composite) CHECK(validate(qj, MembershipLevel::Star).valid);
    ++chains;
  }
  CHECK(chains >= 10);
}

}
