#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "minflow/caps.hpp"
#include "minflow/group.hpp"

namespace minflow {

// A subgroup as a sorted element list plus a membership mask. The parent is
// shared, so subgroups are cheap to copy.
class Subgroup {
 public:
  /// Validates closure; throws NotASubgroup naming the first failure.
  Subgroup(GroupPtr parent, std::vector<Element> elements) : parent_(std::move(parent)) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    mask_.assign(parent_->order(), false);
    for (Element x : elements) {
      if (x >= parent_->order())
        throw Error(ErrorKind::NotASubgroup, "element " + std::to_string(x) + " out of range");
      mask_[x] = true;
    }
    elements_ = std::move(elements);
    if (elements_.empty() || elements_.front() != Group::identity)
      throw Error(ErrorKind::NotASubgroup, "does not contain the identity");
    for (Element a : elements_) {
      if (!mask_[parent_->inverse(a)])
        throw Error(ErrorKind::NotASubgroup,
                    "not closed under inverse at " + std::to_string(a));
      for (Element b : elements_)
        if (!mask_[parent_->op(a, b)])
          throw Error(ErrorKind::NotASubgroup, "not closed: " + std::to_string(a) + "*" +
                                                   std::to_string(b));
    }
    build_rank();
  }

  static Subgroup trivial(GroupPtr g) { return Subgroup(std::move(g), {Group::identity}); }
  static Subgroup whole(GroupPtr g) {
    std::vector<Element> all(g->order());
    std::iota(all.begin(), all.end(), Element{0});
    return Subgroup(std::move(g), std::move(all));
  }

  const GroupPtr& parent() const noexcept { return parent_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(Element x) const noexcept { return x < mask_.size() && mask_[x]; }

  /// Position of `x` inside elements(); x must be a member.
  std::size_t rank(Element x) const noexcept { return rank_[x]; }

  bool operator==(const Subgroup& other) const noexcept { return elements_ == other.elements_; }

 private:
  void build_rank() {
    rank_.assign(parent_->order(), 0);
    for (std::size_t i = 0; i < elements_.size(); ++i) rank_[elements_[i]] = i;
  }

  GroupPtr parent_;
  std::vector<Element> elements_;
  std::vector<bool> mask_;
  std::vector<std::size_t> rank_;
};

/// The subgroup as a standalone group; element i is k.elements()[i].
inline GroupPtr subgroup_as_group(const Subgroup& k, std::string name = {}) {
  const Group& g = *k.parent();
  const std::size_t m = k.size();
  std::vector<Element> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      table[a * m + b] = static_cast<Element>(k.rank(g.op(k.elements()[a], k.elements()[b])));
  if (name.empty()) name = g.name() + "<" + std::to_string(m) + ">";
  std::map<Element, std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    auto it = g.labels().find(k.elements()[a]);
    if (it != g.labels().end()) labels[static_cast<Element>(a)] = it->second;
  }
  return make_group_flat(m, std::move(table), std::move(name), std::move(labels));
}

namespace detail {

inline std::vector<Element> closure(const Group& g, std::vector<bool>& mask,
                                    std::span<const Element> gens) {
  std::vector<Element> members;
  for (Element x = 0; x < g.order(); ++x)
    if (mask[x]) members.push_back(x);
  if (!mask[Group::identity]) {
    mask[Group::identity] = true;
    members.push_back(Group::identity);
  }
  // Right-multiplying the current members by every generator until stable.
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Element s : gens) {
      Element y = g.op(members[i], s);
      if (!mask[y]) {
        mask[y] = true;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace detail

/// Smallest subgroup containing `gens`.
inline Subgroup generated_subgroup(const GroupPtr& g, std::span<const Element> gens) {
  std::vector<bool> mask(g->order(), false);
  mask[Group::identity] = true;
  std::vector<Element> all_gens(gens.begin(), gens.end());
  return Subgroup(g, detail::closure(*g, mask, all_gens));
}

/// True iff g K g^-1 = K for every g.
inline bool is_normal(const Group& g, const Subgroup& k) {
  for (Element x : g.generators())
    for (Element y : k.elements())
      if (!k.contains(g.conjugate(x, y))) return false;
  return true;
}

/// Smallest normal subgroup containing `gens`.
inline Subgroup normal_closure(const GroupPtr& g, std::span<const Element> gens) {
  std::vector<Element> conj;
  for (Element s : gens)
    for (Element x = 0; x < g->order(); ++x) conj.push_back(g->conjugate(x, s));
  return generated_subgroup(g, conj);
}

namespace detail {

inline bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.elements() < b.elements();
}

// All joins of the `atoms`, starting from the trivial subgroup. Every
// subgroup (resp. normal subgroup) is a join of cyclic subgroups (resp.
// normal closures of single elements), so this enumerates the full lattice.
inline std::vector<Subgroup> join_closure(const GroupPtr& g, const std::vector<Subgroup>& atoms) {
  std::set<std::vector<Element>> seen;
  std::vector<Subgroup> found;
  auto add = [&](Subgroup s) {
    if (seen.insert(s.elements()).second) found.push_back(std::move(s));
  };
  add(Subgroup::trivial(g));
  for (const auto& a : atoms) add(a);
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& a : atoms) {
      bool inside = std::all_of(a.elements().begin(), a.elements().end(),
                                [&](Element x) { return found[i].contains(x); });
      if (inside) continue;
      std::vector<bool> mask(g->order(), false);
      for (Element x : found[i].elements()) mask[x] = true;
      std::vector<Element> gens = found[i].elements();
      gens.insert(gens.end(), a.elements().begin(), a.elements().end());
      for (Element x : a.elements()) mask[x] = true;
      add(Subgroup(g, closure(*g, mask, gens)));
    }
  }
  std::sort(found.begin(), found.end(), subgroup_less);
  return found;
}

}  // namespace detail

/// Every subgroup, sorted by (order, elements). Includes {e} and G.
inline std::vector<Subgroup> subgroups(const GroupPtr& g, const Caps& caps = default_caps()) {
  if (g->order() > caps.subgroup_order)
    throw Error(ErrorKind::SizeCapExceeded, "subgroup enumeration capped at order " +
                                                std::to_string(caps.subgroup_order));
  std::vector<Subgroup> cyclic;
  std::set<std::vector<Element>> seen;
  for (Element x = 1; x < g->order(); ++x) {
    Element gen[] = {x};
    Subgroup s = generated_subgroup(g, gen);
    if (seen.insert(s.elements()).second) cyclic.push_back(std::move(s));
  }
  return detail::join_closure(g, cyclic);
}

/// Normal subgroups, sorted like subgroups().
inline std::vector<Subgroup> normal_subgroups(const GroupPtr& g, const Caps& caps = default_caps()) {
  if (g->order() > caps.subgroup_order)
    throw Error(ErrorKind::SizeCapExceeded, "subgroup enumeration capped at order " +
                                                std::to_string(caps.subgroup_order));
  std::vector<Subgroup> atoms;
  std::set<std::vector<Element>> seen;
  for (Element x = 1; x < g->order(); ++x) {
    Element gen[] = {x};
    Subgroup s = normal_closure(g, gen);
    if (seen.insert(s.elements()).second) atoms.push_back(std::move(s));
  }
  return detail::join_closure(g, atoms);
}

}  // namespace minflow
