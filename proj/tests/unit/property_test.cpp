#include <gtest/gtest.h>

#include <random>
#include <set>

#include "minflow/io.hpp"
#include "minflow/sweep.hpp"
#include "oracles.hpp"

// Catalog-wide laws. Each check recomputes the law from plain tables
// instead of reusing the library's own verification reports.

using namespace minflow;

namespace {

std::vector<GroupPtr> small_groups(std::size_t max_order = 24) {
  std::vector<GroupPtr> out;
  for (const auto& e : builtin_catalog())
    if (e.order <= max_order) out.push_back(e.make());
  return out;
}

std::vector<SectionPolicy> policies() {
  return {MinIndexPolicy{}, SeededRandomPolicy{1}, SeededRandomPolicy{2}, SeededRandomPolicy{77}};
}

}  // namespace

TEST(Property, SectionPicksFromEachCoset) {
  for (const auto& g : small_groups()) {
    for (const auto& k : subgroups(g)) {
      const CosetSpace cs = quotient(k);
      for (const auto& p : policies()) {
        const CrossSection s = cross_section(cs, p);
        ASSERT_EQ(s(0), Group::identity) << g->name();
        for (Coset c = 0; c < cs.count(); ++c) {
          // s(c)^-1 r(c) in K, with r(c) the smallest element of coset c.
          EXPECT_TRUE(k.contains(g->op(g->inverse(s(c)), cs.representative(c)))) << g->name() << " c=" << c;
        }
        std::set<Element> used(s.table().begin(), s.table().end());
        EXPECT_EQ(used.size(), cs.count());
      }
    }
  }
}

TEST(Property, CosetsPartitionTheGroup) {
  for (const auto& g : small_groups()) {
    for (const auto& k : subgroups(g)) {
      const CosetSpace cs = quotient(k);
      EXPECT_EQ(cs.count() * k.size(), g->order());
      for (Element x = 0; x < g->order(); ++x)
        for (Element y : k.elements()) EXPECT_EQ(cs.coset_of(g->op(x, y)), cs.coset_of(x));
    }
  }
}

TEST(Property, CocycleIdentityAndValues) {
  for (const auto& g : small_groups()) {
    for (const auto& k : normal_subgroups(g)) {
      for (const auto& p : policies()) {
        const CrossSection s = cross_section(quotient(k), p);
        const Cocycle rho = cocycle_from_section(s);
        const CosetSpace& cs = s.cosets();
        for (Element a = 0; a < g->order(); ++a)
          for (Coset c = 0; c < cs.count(); ++c) {
            // s(a.c) rho(a, c) = a s(c)
            ASSERT_EQ(g->op(s(cs.act(a, c)), rho(a, c)), g->op(a, s(c)));
            ASSERT_TRUE(k.contains(rho(a, c)));
          }
        for (Element a = 0; a < g->order(); ++a)
          for (Element b = 0; b < g->order(); ++b)
            for (Coset c = 0; c < cs.count(); ++c)
              ASSERT_EQ(rho(g->op(a, b), c), g->op(rho(a, cs.act(b, c)), rho(b, c)))
                  << g->name() << " a=" << a << " b=" << b << " c=" << c;
      }
    }
  }
}

TEST(Property, PhiIsAnIsomorphismOntoTranslation) {
  for (const auto& g : small_groups()) {
    for (const auto& k : normal_subgroups(g)) {
      const Cocycle rho = cocycle_from_section(cross_section(quotient(k), SeededRandomPolicy{5}));
      const Flow f = twisted_product_flow(rho);
      const auto phi = phi_points(rho);
      ASSERT_EQ(phi[*f.base_point()], Group::identity);
      std::set<Point> image(phi.begin(), phi.end());
      ASSERT_EQ(image.size(), g->order());
      for (Element a = 0; a < g->order(); ++a)
        for (Point x = 0; x < f.size(); ++x) ASSERT_EQ(phi[f.act(a, x)], g->op(a, phi[x])) << g->name();
    }
  }
}

TEST(Property, OrbitLemmaHoldsForEveryNormalSubgroup) {
  for (const auto& g : small_groups()) {
    for (const auto& k : normal_subgroups(g)) {
      auto osf = orbit_space_flow(left_translation_flow(g), k);
      // K-orbits of left translation are right cosets yK, identical to left cosets for normal K.
      ASSERT_EQ(osf.flow.size(), g->order() / k.size());
      EXPECT_TRUE(check_orbit_lemma(k).passed()) << g->name();
    }
  }
}

TEST(Property, MinimalSubflowsPartitionAndAreMinimal) {
  for (const auto& g : small_groups(12)) {
    const auto subs = subgroups(g);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const Flow a = coset_flow(subs[i]);
      const Flow b = coset_flow(subs[(i * 7 + 3) % subs.size()]);
      const Flow p = product_flow(a, b);
      std::vector<int> cover(p.size(), 0);
      for (const auto& sf : minimal_subflows(p)) {
        EXPECT_TRUE(is_minimal(sf.flow));
        EXPECT_EQ(std::set<Point>(sf.points.begin(), sf.points.end()), oracle::orbit(p, sf.points[0]));
        for (Point x : sf.points) ++cover[x];
      }
      EXPECT_TRUE(std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; })) << g->name();
    }
  }
}

TEST(Property, HomomorphicImageOfMinimalIsMinimal) {
  for (const auto& g : small_groups(16)) {
    const Flow lt = left_translation_flow(g);
    for (const auto& k : subgroups(g)) {
      const Flow target = coset_flow(k);
      auto m = find_homomorphism(lt, target);
      ASSERT_TRUE(m.has_value()) << g->name();
      std::set<Point> image(m->map.begin(), m->map.end());
      EXPECT_EQ(image.size(), target.size());
      EXPECT_TRUE(is_minimal(target));
    }
  }
}

TEST(Property, SerializedObjectsRevalidate) {
  std::mt19937 rng(11);
  for (const auto& g : small_groups()) {
    const auto back = group_from_json(parse_json(dump(group_to_json(*g))));
    EXPECT_TRUE(back->same_table(*g));
    const auto subs = subgroups(g);
    const Subgroup& k = subs[rng() % subs.size()];
    const Flow f = coset_flow(k);
    const Flow f2 = flow_from_json(parse_json(dump(flow_to_json(f, true))));
    EXPECT_EQ(f2, f);
    EXPECT_EQ(subgroup_from_json(parse_json(dump(subgroup_to_json(k))), g), k);
  }
}

TEST(Property, TrivialActionGivesDirectProduct) {
  const std::vector<GroupPtr> pool = {cyclic(1), cyclic(2), cyclic(3), klein_four(), symmetric(3), quaternion8()};
  for (const auto& h : pool)
    for (const auto& k : pool) {
      auto sp = semidirect_product(h, k, trivial_action(*h, *k));
      auto dp = direct_product(*h, *k);
      EXPECT_TRUE(sp.group->same_table(*dp)) << h->name() << " " << k->name();
      for (Element a = 0; a < h->order(); ++a)
        for (Element x = 0; x < k->order(); ++x)
          EXPECT_EQ(sp.group->op(sp.pair(a, 0), sp.pair(0, x)), sp.pair(a, x));
    }
}

TEST(Property, SemidirectFibreLaw) {
  // (h1,k1)(h2,k2) = (h1 h2, theta(h2^-1)(k1) k2)
  for (const char* name : {"C2|xC3", "C2|xC4", "C4|xC4"}) {
    auto sp = *builtin_semidirect(name);
    const Group& h = *sp.complement_group;
    const Group& k = *sp.normal_group;
    for (Element h1 = 0; h1 < h.order(); ++h1)
      for (Element h2 = 0; h2 < h.order(); ++h2)
        for (Element k1 = 0; k1 < k.order(); ++k1)
          for (Element k2 = 0; k2 < k.order(); ++k2)
            ASSERT_EQ(sp.group->op(sp.pair(h1, k1), sp.pair(h2, k2)),
                      sp.pair(h.op(h1, h2), k.op(sp.theta[h.inverse(h2)][k1], k2)))
                << name;
  }
}
