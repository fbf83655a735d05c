#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "minflow/group.hpp"
#include "minflow/subgroup.hpp"

namespace minflow {

using Coset = std::uint32_t;

// Left cosets gK of a subgroup. Cosets are numbered by increasing minimal
// element, so the subgroup itself is coset 0.
class CosetSpace {
 public:
  const GroupPtr& parent() const noexcept { return subgroup_.parent(); }
  const Subgroup& subgroup() const noexcept { return subgroup_; }
  std::size_t count() const noexcept { return representatives_.size(); }

  Coset coset_of(Element g) const noexcept { return coset_of_[g]; }
  Element representative(Coset c) const noexcept { return representatives_[c]; }
  const std::vector<Coset>& coset_table() const noexcept { return coset_of_; }
  const std::vector<Element>& representatives() const noexcept { return representatives_; }

  /// g . (xK) = (gx)K
  Coset act(Element g, Coset c) const noexcept {
    return coset_of_[parent()->op(g, representatives_[c])];
  }

  bool is_normal() const noexcept { return quotient_ != nullptr; }
  /// Present iff the subgroup is normal; element c is coset c.
  const GroupPtr& quotient_group() const noexcept { return quotient_; }

 private:
  friend CosetSpace quotient(const Subgroup& k);
  explicit CosetSpace(Subgroup k) : subgroup_(std::move(k)) {}

  Subgroup subgroup_;
  std::vector<Coset> coset_of_;
  std::vector<Element> representatives_;
  GroupPtr quotient_;
};

/// Coset partition of the parent by `k`; populates the quotient group when
/// `k` is normal.
inline CosetSpace quotient(const Subgroup& k) {
  CosetSpace cs(k);
  const Group& g = *k.parent();
  constexpr Coset unset = ~Coset{0};
  cs.coset_of_.assign(g.order(), unset);
  for (Element x = 0; x < g.order(); ++x) {
    if (cs.coset_of_[x] != unset) continue;
    const Coset c = static_cast<Coset>(cs.representatives_.size());
    cs.representatives_.push_back(x);
    for (Element y : k.elements()) cs.coset_of_[g.op(x, y)] = c;
  }
  if (is_normal(g, k)) {
    const std::size_t m = cs.count();
    std::vector<Element> table(m * m);
    for (Coset a = 0; a < m; ++a)
      for (Coset b = 0; b < m; ++b)
        table[a * m + b] = cs.coset_of_[g.op(cs.representatives_[a], cs.representatives_[b])];
    cs.quotient_ = make_group_flat(m, std::move(table), g.name() + "/K");
  }
  return cs;
}

struct MinIndexPolicy {};
struct SeededRandomPolicy {
  std::uint64_t seed = 0;
};
struct ExplicitPolicy {
  std::vector<Element> table;  // indexed by coset
};
using SectionPolicy = std::variant<MinIndexPolicy, SeededRandomPolicy, ExplicitPolicy>;

inline std::string policy_label(const SectionPolicy& p) {
  if (std::holds_alternative<MinIndexPolicy>(p)) return "min-index";
  if (auto* r = std::get_if<SeededRandomPolicy>(&p)) return "seeded-random:" + std::to_string(r->seed);
  return "explicit";
}

// A right inverse of g -> gK, normalized so the subgroup's own coset maps to e.
class CrossSection {
 public:
  const CosetSpace& cosets() const noexcept { return cosets_; }
  Element operator()(Coset c) const noexcept { return section_[c]; }
  const std::vector<Element>& table() const noexcept { return section_; }

  /// True iff section[c] lies in `c` for every c (always true after
  /// construction; exposed for re-verification).
  bool is_section() const noexcept {
    for (Coset c = 0; c < section_.size(); ++c)
      if (cosets_.coset_of(section_[c]) != c) return false;
    return section_[0] == Group::identity;
  }

  /// True iff c -> section[c] is a homomorphism from the quotient group.
  bool is_homomorphic() const {
    if (!cosets_.is_normal()) return false;
    const Group& q = *cosets_.quotient_group();
    const Group& g = *cosets_.parent();
    for (Coset a = 0; a < q.order(); ++a)
      for (Coset b = 0; b < q.order(); ++b)
        if (section_[q.op(a, b)] != g.op(section_[a], section_[b])) return false;
    return true;
  }

 private:
  friend CrossSection cross_section(const CosetSpace&, const SectionPolicy&);
  CrossSection(CosetSpace cs, std::vector<Element> s)
      : cosets_(std::move(cs)), section_(std::move(s)) {}

  CosetSpace cosets_;
  std::vector<Element> section_;
};

inline CrossSection cross_section(const CosetSpace& cs, const SectionPolicy& policy) {
  const Group& g = *cs.parent();
  std::vector<Element> s(cs.count());
  if (std::holds_alternative<MinIndexPolicy>(policy)) {
    s = cs.representatives();
  } else if (auto* r = std::get_if<SeededRandomPolicy>(&policy)) {
    std::mt19937_64 rng(r->seed);
    std::vector<std::vector<Element>> members(cs.count());
    for (Element x = 0; x < g.order(); ++x) members[cs.coset_of(x)].push_back(x);
    for (Coset c = 0; c < cs.count(); ++c) s[c] = members[c][rng() % members[c].size()];
  } else {
    const auto& t = std::get<ExplicitPolicy>(policy).table;
    if (t.size() != cs.count())
      throw Error(ErrorKind::NotASection, "explicit table has " + std::to_string(t.size()) +
                                              " entries for " + std::to_string(cs.count()) +
                                              " cosets");
    for (Coset c = 0; c < cs.count(); ++c) {
      if (t[c] >= g.order() || cs.coset_of(t[c]) != c)
        throw Error(ErrorKind::NotASection, "coset " + std::to_string(c) + " mapped to element " +
                                                std::to_string(t[c]) + " outside it");
    }
    s = t;
  }
  // Shift so that s(K) = e; right multiplication by an element of K keeps
  // every value inside its left coset.
  const Element shift = g.inverse(s[0]);
  for (auto& x : s) x = g.op(x, shift);
  return CrossSection(cs, std::move(s));
}

}  // namespace minflow
