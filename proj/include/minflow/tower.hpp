#pragma once

#include <string>
#include <vector>

#include "minflow/extension.hpp"
#include "minflow/groups.hpp"
#include "minflow/homomorphism.hpp"
#include "minflow/wreath.hpp"

// Depth-truncated tree automorphism towers W_1 .. W_d and the extension
// theorem applied level by level. This is an exploration harness: it
// computes finite truncations and reports on them. It does not say anything
// about the universal minimal flow of the full tree automorphism group.

namespace minflow {

inline constexpr const char* tower_report_header =
    "exploration harness: finite truncations only, no claim about the infinite tree group";

struct WreathTower {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<WreathGroup> levels;  // levels[i - 1] is W_i
  VerificationReport invariants;

  const WreathGroup& level(std::size_t i) const { return levels.at(i - 1); }

  /// Level-1 kernel elements per level; empty for levels without a table.
  std::vector<std::vector<Element>> kernels() const {
    std::vector<std::vector<Element>> out;
    for (const auto& w : levels)
      out.push_back(w.level1_kernel ? w.level1_kernel->elements() : std::vector<Element>{});
    return out;
  }
};

namespace detail {

inline void check_level(const WreathTower& t, std::size_t i, VerificationReport& r) {
  const WreathGroup& w = t.level(i);
  const std::string at = "W" + std::to_string(i) + ".";
  auto formula = wreath_order_formula(t.n, i);
  r.add(at + "order_formula", formula && *formula == w.order, 1,
        "computed " + std::to_string(w.order));
  std::uint64_t prev = i == 1 ? 1 : t.level(i - 1).order, want = factorial(t.n), pow = 1;
  for (std::size_t a = 0; a < t.n; ++a) pow *= prev;
  r.add(at + "order_recursion", w.order == want * pow, 1);
  r.add(at + "kernel_order", w.kernel_perm.order() == pow, 1,
        "kernel has order " + std::to_string(w.kernel_perm.order()));
  if (!w.has_table()) return;

  const Subgroup& k = *w.level1_kernel;
  r.add(at + "kernel_normal", is_normal(*w.group, k), w.group->generators().size() * k.size());
  const CosetSpace cs = quotient(k);
  r.add(at + "quotient_is_symmetric", are_isomorphic(*cs.quotient_group(), *symmetric(t.n)), 1);

  // Kernel = W_{i-1}^n through the identity on mixed-radix indices.
  GroupPtr power = i == 1 ? cyclic(1) : direct_power(*t.level(i - 1).group, t.n);
  bool prefix = k.size() == power->order();
  for (std::size_t x = 0; prefix && x < k.size(); ++x) prefix = k.elements()[x] == x;
  std::vector<Element> id(power->order());
  for (Element x = 0; x < id.size(); ++x) id[x] = x;
  r.add(at + "kernel_is_direct_power",
        prefix && is_homomorphism(*power, *subgroup_as_group(k), id), power->order() * power->order());

  // Each restriction p_{i->j} is a homomorphism onto W_j with kernel the
  // level-j kernel, and p_{i->j} = p_{(i-1)->j} o p_{i->(i-1)}.
  for (std::size_t j = 1; j < i; ++j) {
    const WreathGroup& wj = t.level(j);
    const auto& p = w.projection[j];
    std::vector<bool> hit(wj.group->order(), false);
    for (Element x : p) hit[x] = true;
    const bool onto = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    r.add(at + "projection_" + std::to_string(j) + "_homomorphism_onto",
          onto && is_homomorphism(*w.group, *wj.group, p), w.order * w.order);
    if (j + 1 < i) {
      const auto& mid = w.projection[i - 1];
      const auto& down = t.level(i - 1).projection[j];
      bool ok = true;
      for (Element x = 0; x < w.group->order() && ok; ++x) ok = p[x] == down[mid[x]];
      r.add(at + "projection_" + std::to_string(j) + "_composes", ok, w.order);
    }
  }
}

}  // namespace detail

/// Levels W_1 .. W_d with every structural invariant checked.
inline WreathTower build_tower(std::size_t n, std::size_t d, const Caps& caps = default_caps()) {
  WreathTower t{n, d, wreath_levels(n, d, caps), {}};
  for (std::size_t i = 1; i <= d; ++i) detail::check_level(t, i, t.invariants);
  return t;
}

struct DecompositionChain {
  std::vector<ExtensionWitness> witnesses;  // one per verified level i >= 2
  std::vector<std::size_t> levels;          // the level index of each witness
  std::vector<std::size_t> skipped;         // levels past the table or iso caps
};

/// verify_extension_theorem(W_i, level-1 kernel) for each level i >= 2.
inline DecompositionChain decomposition_chain(const WreathTower& t, const SectionPolicy& policy = MinIndexPolicy{},
                                              const Caps& caps = default_caps()) {
  DecompositionChain chain;
  for (std::size_t i = 2; i <= t.d; ++i) {
    const WreathGroup& w = t.level(i);
    if (!w.has_table() || w.order > caps.iso_points) {
      chain.skipped.push_back(i);
      continue;
    }
    chain.witnesses.push_back(verify_extension_theorem(*w.level1_kernel, policy, std::nullopt, caps));
    chain.levels.push_back(i);
  }
  return chain;
}

/// K_{i,j}-orbits of left translation on W_i, as a W_i-flow, against left
/// translation of W_j pulled back along p_{i->j}. j == i compares a flow
/// with itself through the trivial kernel.
inline VerificationReport level_consistency_check(const WreathTower& t, std::size_t i, std::size_t j,
                                                  const Caps& caps = default_caps()) {
  VerificationReport r;
  const std::string name = "level_consistency_" + std::to_string(i) + "_" + std::to_string(j);
  const WreathGroup& w = t.level(i);
  if (j == 0 || j > i || !w.has_table()) {
    r.add(name, false, 0, "levels out of range or without a table");
    return r;
  }
  const Subgroup k = w.level_kernel(j);
  const OrbitSpaceFlow osf = orbit_space_flow(left_translation_flow(w.group), k);
  std::vector<Element> q(w.group->order());
  for (Element x = 0; x < q.size(); ++x) q[x] = osf.cosets.coset_of(x);
  const Flow lhs = pullback(osf.flow, w.group, q);
  const Flow rhs = pullback(left_translation_flow(t.level(j).group), w.group, w.projection[j]);
  const IsoResult iso = find_isomorphism(lhs, rhs, caps);
  r.add(name, iso.morphism.has_value(), lhs.size(), iso.witness);
  return r;
}

/// Every pair j < i with a table.
inline VerificationReport level_consistency(const WreathTower& t, const Caps& caps = default_caps()) {
  VerificationReport r;
  for (std::size_t i = 2; i <= t.d; ++i) {
    if (!t.level(i).has_table()) continue;
    for (std::size_t j = 1; j < i; ++j) r.append(level_consistency_check(t, i, j, caps));
  }
  return r;
}

/// Level-i twisted flow restricted to the copy of W_{i-1} in the first
/// subtree: every minimal subflow must match the level-(i-1) twisted flow
/// (left translation of W_1 at the bottom of the chain).
inline VerificationReport composability(const WreathTower& t, const DecompositionChain& chain,
                                        const Caps& caps = default_caps()) {
  VerificationReport r;
  for (std::size_t c = 0; c < chain.witnesses.size(); ++c) {
    const std::size_t i = chain.levels[c];
    const ExtensionWitness& w = chain.witnesses[c];
    const std::string name = "composability_" + std::to_string(i);
    if (!w.twisted_flow) {
      r.add(name, false, 0, "level has no twisted flow");
      continue;
    }
    const WreathGroup& lower = t.level(i - 1);
    const std::size_t m = lower.group->order();
    std::size_t stride = 1;
    for (std::size_t a = 1; a < t.n; ++a) stride *= m;
    std::vector<Element> embed(m);
    for (Element x = 0; x < m; ++x) embed[x] = static_cast<Element>(x * stride);
    const Subgroup copy(t.level(i).group, embed);
    std::vector<Element> hom(m);
    for (Element x = 0; x < m; ++x) hom[x] = static_cast<Element>(copy.rank(embed[x]));

    std::optional<Flow> reference;
    for (std::size_t p = 0; p < c; ++p)
      if (chain.levels[p] == i - 1) reference = chain.witnesses[p].twisted_flow;
    if (!reference) reference = left_translation_flow(lower.group);

    const Flow restricted = pullback(restrict(*w.twisted_flow, copy), lower.group, hom);
    const auto pieces = minimal_subflows(restricted);
    std::string witness;
    for (std::size_t s = 0; s < pieces.size() && witness.empty(); ++s) {
      const IsoResult iso = find_isomorphism(pieces[s].flow, *reference, caps);
      if (!iso) witness = "subflow " + std::to_string(s) + ": " + iso.witness;
    }
    r.add(name, witness.empty(), pieces.size(), witness);
  }
  return r;
}

}  // namespace minflow
