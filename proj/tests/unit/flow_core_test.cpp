#include <gtest/gtest.h>

#include "minflow/catalog.hpp"
#include "minflow/flow.hpp"
#include "minflow/flow_iso.hpp"
#include "minflow/groups.hpp"
#include "oracles.hpp"

using namespace minflow;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ParseError;
}

// S3 on three letters: element p sends i to p(i) (labels are the images).
Flow natural_s3() {
  auto s3 = symmetric(3);
  const auto perms = perm::all_lex(3);
  std::vector<std::vector<Point>> rows;
  for (const auto& p : perms) rows.push_back({p[0], p[1], p[2]});
  return make_flow(s3, rows, std::nullopt);
}

}  // namespace

TEST(MakeFlow, SwapFlow) {
  auto f = make_flow(cyclic(2), {{0, 1}, {1, 0}}, Point{0});
  EXPECT_TRUE(is_minimal(f));
  EXPECT_TRUE(is_free(f));
  EXPECT_TRUE(is_ambit(f));
}

TEST(MakeFlow, Errors) {
  EXPECT_EQ(kind_of([] { make_flow(cyclic(2), {{1, 0}, {0, 1}}, std::nullopt); }),
            ErrorKind::IdentityActsNontrivially);
  // C3 with the generator acting as a transposition: law fails.
  EXPECT_EQ(kind_of([] { make_flow(cyclic(3), {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}}, std::nullopt); }),
            ErrorKind::ActionLawViolated);
  EXPECT_EQ(kind_of([] { make_flow(cyclic(2), {{0, 1}, {0, 1}}, Point{0}); }), ErrorKind::BasePointOrbitNotFull);
  EXPECT_EQ(kind_of([] { make_flow(cyclic(2), {{0, 1}}, std::nullopt); }), ErrorKind::MalformedTable);
  EXPECT_EQ(kind_of([] { make_flow(cyclic(2), {{0, 1}, {1, 2}}, std::nullopt); }), ErrorKind::MalformedTable);
}

TEST(MakeFlow, NaturalS3NotFree) {
  auto f = natural_s3();
  EXPECT_TRUE(is_minimal(f));
  EXPECT_FALSE(is_free(f));
  for (Point x = 0; x < 3; ++x) EXPECT_EQ(stabilizer_order(f, x), 2u);
}

TEST(Translation, Examples) {
  auto c3 = left_translation_flow(cyclic(3));
  EXPECT_EQ(c3.size(), 3u);
  EXPECT_EQ(orbits(c3).orbit_count, 1u);
  EXPECT_TRUE(is_free(c3));
  EXPECT_EQ(left_translation_flow(cyclic(1)).size(), 1u);
  auto s3 = left_translation_flow(symmetric(3));
  EXPECT_TRUE(is_free(s3) && is_minimal(s3));
  EXPECT_EQ(universal_minimal(symmetric(3)), s3);
  EXPECT_EQ(greatest_ambit(cyclic(1)).size(), 1u);
  auto m2 = universal_minimal(cyclic(2));
  EXPECT_EQ(m2, make_flow(cyclic(2), {{0, 1}, {1, 0}}, Point{0}));
}

TEST(Translation, CatalogMinimalFreeAmbit) {
  for (const auto& e : builtin_catalog()) {
    auto f = left_translation_flow(e.make());
    EXPECT_TRUE(is_minimal(f) && is_free(f) && is_ambit(f)) << e.name;
  }
}

TEST(CosetFlow, Examples) {
  auto s3 = symmetric(3);
  auto f = coset_flow(Subgroup(s3, {0, 3, 4}));
  EXPECT_EQ(f.size(), 2u);
  for (Element a : {0u, 3u, 4u}) EXPECT_EQ(f.act(a, 1), 1u);
  EXPECT_EQ(coset_flow(Subgroup::trivial(s3)), left_translation_flow(s3));
  EXPECT_EQ(coset_flow(Subgroup::whole(s3)).size(), 1u);
}

TEST(Orbits, Examples) {
  auto f = make_flow(cyclic(2), {{0, 1, 2}, {1, 0, 2}}, std::nullopt);
  auto subs = minimal_subflows(f);
  ASSERT_EQ(subs.size(), 2u);
  EXPECT_EQ(subs[0].points, (std::vector<Point>{0, 1}));
  EXPECT_EQ(subs[1].points, (std::vector<Point>{2}));
  EXPECT_EQ(minimal_subflows(left_translation_flow(dihedral(5))).size(), 1u);
  auto r = restrict(left_translation_flow(symmetric(3)), Subgroup(symmetric(3), {0, 3, 4}));
  EXPECT_EQ(orbits(r).sizes(), (std::vector<std::size_t>{3, 3}));
  EXPECT_TRUE(is_free(r));
}

TEST(Orbits, GeneratorClosureMatchesFullSweepAndOracle) {
  for (const auto& e : builtin_catalog()) {
    if (e.order > 24) continue;
    auto g = e.make();
    for (const auto& k : subgroups(g)) {
      auto f = coset_flow(k);
      auto a = orbits(f), b = orbits_full_sweep(f);
      EXPECT_EQ(a.orbit_of, b.orbit_of);
      auto r = restrict(left_translation_flow(g), k);
      auto p = orbits(r);
      for (Point x = 0; x < r.size(); ++x) {
        auto o = oracle::orbit(r, x);
        EXPECT_EQ(o.size(), p.sizes()[p.orbit_of[x]]);
        for (Point y : o) EXPECT_EQ(p.orbit_of[y], p.orbit_of[x]);
      }
    }
  }
}

TEST(Predicates, TrivialActionOnTwoPoints) {
  auto f = make_flow(cyclic(2), {{0, 1}, {0, 1}}, std::nullopt);
  EXPECT_FALSE(is_minimal(f));
  EXPECT_FALSE(is_free(f));
  EXPECT_FALSE(is_ambit(f));
}

TEST(Restrict, Degenerate) {
  auto g = dihedral(4);
  auto f = left_translation_flow(g);
  auto t = restrict(f, Subgroup::trivial(g));
  EXPECT_EQ(t.group()->order(), 1u);
  EXPECT_EQ(orbits(t).orbit_count, f.size());
  auto w = restrict(f, Subgroup::whole(g));
  EXPECT_EQ(w.table(), f.table());
  EXPECT_EQ(w.base_point(), f.base_point());
}

TEST(OrbitSpace, Examples) {
  auto s3 = symmetric(3);
  auto o = orbit_space_flow(left_translation_flow(s3), Subgroup(s3, {0, 3, 4}));
  EXPECT_EQ(o.flow.size(), 2u);
  EXPECT_TRUE(find_isomorphism(o.flow, left_translation_flow(o.cosets.quotient_group())));

  auto g = quaternion8();
  auto triv = orbit_space_flow(left_translation_flow(g), Subgroup::trivial(g));
  EXPECT_TRUE(oracle::flows_isomorphic(triv.flow, left_translation_flow(triv.cosets.quotient_group())));
  auto whole = orbit_space_flow(left_translation_flow(g), Subgroup::whole(g));
  EXPECT_EQ(whole.flow.size(), 1u);
  EXPECT_EQ(whole.flow.group()->order(), 1u);
  EXPECT_EQ(kind_of([&] { orbit_space_flow(left_translation_flow(s3), Subgroup(s3, {0, 1})); }),
            ErrorKind::NotNormal);
}

TEST(ProductFlow, Examples) {
  auto one = left_translation_flow(cyclic(1));
  EXPECT_EQ(product_flow(one, one).size(), 1u);
  auto z2 = left_translation_flow(cyclic(2));
  auto p = product_flow(z2, z2);
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(orbits(p).orbit_count, 2u);
  EXPECT_FALSE(is_minimal(p));
  auto a = make_flow(cyclic(1), {{0, 1, 2}}, std::nullopt);
  auto b = make_flow(cyclic(1), {{0, 1}}, std::nullopt);
  EXPECT_EQ(product_flow(a, b).size(), 6u);
  EXPECT_EQ(kind_of([&] { product_flow(z2, one); }), ErrorKind::GroupMismatch);
}

TEST(FindIsomorphism, Examples) {
  auto z4 = cyclic(4);
  auto t = left_translation_flow(z4);
  auto self = find_isomorphism(t, t);
  ASSERT_TRUE(self);
  EXPECT_EQ(self.morphism->map, (std::vector<Point>{0, 1, 2, 3}));
  EXPECT_TRUE(self.morphism->checked);

  // Z4 through Z4 -> Z2 on two doubled points.
  auto doubled = make_flow(z4, {{0, 1, 2, 3}, {1, 0, 3, 2}, {0, 1, 2, 3}, {1, 0, 3, 2}}, std::nullopt);
  auto no = find_isomorphism(t, doubled);
  EXPECT_FALSE(no);
  EXPECT_NE(no.witness.find("orbit size"), std::string::npos);

  auto s3 = symmetric(3);
  auto c = coset_flow(Subgroup(s3, {0, 1}));
  auto nat = natural_s3();
  auto iso = find_isomorphism(c, nat);
  ASSERT_TRUE(iso);
  EXPECT_TRUE(oracle::flows_isomorphic(c, nat));
  EXPECT_FALSE(equivariance_violation(c, nat, iso.morphism->map));
}

TEST(FindIsomorphism, AgreesWithBruteForceOnSmallFlows) {
  // All coset flows of S3 and D4 pairwise: oracle by exhaustive bijections.
  for (auto g : {symmetric(3), dihedral(4), cyclic(6)}) {
    std::vector<Flow> flows;
    for (const auto& k : subgroups(g)) flows.push_back(coset_flow(k));
    for (const auto& a : flows)
      for (const auto& b : flows) {
        if (a.size() != b.size()) continue;
        EXPECT_EQ(static_cast<bool>(find_isomorphism(a, b)), oracle::flows_isomorphic(a, b));
      }
  }
}

TEST(FindIsomorphism, StabilizerWitnessAndCaps) {
  // Same orbit sizes, different stabilizers: Z2 x Z2 on two 2-point orbits.
  auto v = klein_four();
  auto a = coset_flow(Subgroup(v, {0, 1}));
  auto b = coset_flow(Subgroup(v, {0, 2}));
  auto r = find_isomorphism(a, b);
  EXPECT_FALSE(r);
  EXPECT_FALSE(r.witness.empty());
  Caps small;
  small.iso_points = 3;
  EXPECT_EQ(kind_of([&] { find_isomorphism(left_translation_flow(v), left_translation_flow(v), small); }),
            ErrorKind::SizeCapExceeded);
  EXPECT_EQ(kind_of([&] { find_isomorphism(a, left_translation_flow(cyclic(4))); }), ErrorKind::GroupMismatch);
}

TEST(FindIsomorphism, RelabelledCopy) {
  auto g = dihedral(5);
  auto f = left_translation_flow(g);
  std::vector<Point> relabel(f.size());
  for (Point x = 0; x < f.size(); ++x) relabel[x] = (x * 3 + 4) % static_cast<Point>(f.size());
  std::vector<Point> moved(f.table().size());
  for (Element e = 0; e < g->order(); ++e)
    for (Point x = 0; x < f.size(); ++x) moved[e * f.size() + relabel[x]] = relabel[f.act(e, x)];
  auto copy = make_flow(g, f.size(), moved, relabel[0]);
  auto iso = find_isomorphism(f, copy);
  ASSERT_TRUE(iso);
  // Free and transitive: the search takes the lowest target for point 0,
  // after which g.0 -> g.0 fixes everything.
  EXPECT_EQ(iso.morphism->map[0], 0u);
  for (Element e = 0; e < g->order(); ++e) EXPECT_EQ(iso.morphism->map[f.act(e, 0)], copy.act(e, 0));
  EXPECT_FALSE(equivariance_violation(f, copy, relabel));
}

TEST(Homomorphism, UniversalMinimalMapsOntoMinimalFlows) {
  auto s3 = symmetric(3);
  auto m = universal_minimal(s3);
  std::vector<Flow> targets = {natural_s3()};
  for (const auto& k : subgroups(s3)) targets.push_back(coset_flow(k));
  for (const auto& t : targets) {
    auto h = find_homomorphism(m, t);
    ASSERT_TRUE(h);
    std::set<Point> image(h->map.begin(), h->map.end());
    EXPECT_EQ(image.size(), t.size());
    // Image of a minimal flow is minimal.
    EXPECT_TRUE(is_minimal(t));
  }
}

TEST(Morphism, MakeMorphismRejects) {
  auto z2 = left_translation_flow(cyclic(2));
  EXPECT_EQ(kind_of([&] { make_morphism(z2, z2, {0, 0}, false); }), ErrorKind::NotEquivariant);
  auto fixed = make_flow(cyclic(2), {{0, 1}, {0, 1}}, std::nullopt);
  EXPECT_EQ(kind_of([&] { make_morphism(fixed, fixed, {0, 0}, true); }), ErrorKind::NotBijective);
}
