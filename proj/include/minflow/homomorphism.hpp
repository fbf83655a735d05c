#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "minflow/caps.hpp"
#include "minflow/group.hpp"

namespace minflow {

namespace detail {

// Extends gens[i] -> images[i] (i < count) along every Cayley-graph edge of
// the subgroup generated by the first `count` generators. Consistency on all
// edges is exactly the homomorphism condition on that subgroup.
inline bool extend_on_generators(const Group& a, const Group& b, const std::vector<Element>& gens,
                                 const std::vector<Element>& images, std::size_t count,
                                 std::vector<Element>& map) {
  constexpr Element unset = ~Element{0};
  map.assign(a.order(), unset);
  map[Group::identity] = Group::identity;
  std::vector<Element> queue{Group::identity};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Element x = queue[q];
    for (std::size_t i = 0; i < count; ++i) {
      const Element y = a.op(x, gens[i]);
      const Element fy = b.op(map[x], images[i]);
      if (map[y] == unset) {
        map[y] = fy;
        queue.push_back(y);
      } else if (map[y] != fy) {
        return false;
      }
    }
  }
  return true;
}

inline std::vector<std::size_t> element_orders(const Group& g) {
  std::vector<std::size_t> out(g.order());
  for (Element x = 0; x < g.order(); ++x) out[x] = g.element_order(x);
  return out;
}

// Calls `visit` with every isomorphism a -> b; stops when visit returns false.
inline void for_each_isomorphism(const Group& a, const Group& b,
                                 const std::function<bool(const std::vector<Element>&)>& visit) {
  if (a.order() != b.order()) return;
  const auto oa = element_orders(a), ob = element_orders(b);
  {
    auto sa = oa, sb = ob;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return;
  }
  const auto& gens = a.generators();
  std::vector<std::vector<Element>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Element y = 0; y < b.order(); ++y)
      if (ob[y] == oa[gens[i]]) candidates[i].push_back(y);

  std::vector<Element> images(gens.size());
  std::vector<Element> map;
  bool stop = false;
  std::function<void(std::size_t)> recurse = [&](std::size_t depth) {
    if (stop) return;
    if (depth == gens.size()) {
      if (!extend_on_generators(a, b, gens, images, gens.size(), map)) return;
      std::vector<bool> hit(b.order(), false);
      for (Element y : map) {
        if (hit[y]) return;
        hit[y] = true;
      }
      if (!visit(map)) stop = true;
      return;
    }
    for (Element y : candidates[depth]) {
      images[depth] = y;
      if (!extend_on_generators(a, b, gens, images, depth + 1, map)) continue;
      recurse(depth + 1);
      if (stop) return;
    }
  };
  recurse(0);
}

}  // namespace detail

/// Brute-force group isomorphism search; returns the first isomorphism
/// a -> b in generator-image lexicographic order.
inline std::optional<std::vector<Element>> find_group_isomorphism(const Group& a, const Group& b) {
  std::optional<std::vector<Element>> found;
  detail::for_each_isomorphism(a, b, [&](const std::vector<Element>& m) {
    found = m;
    return false;
  });
  return found;
}

inline bool are_isomorphic(const Group& a, const Group& b) {
  return find_group_isomorphism(a, b).has_value();
}

struct AutomorphismGroup {
  GroupPtr group;                          // element i is maps[i]
  std::vector<std::vector<Element>> maps;  // sorted; maps[0] is the identity
};

/// All automorphisms of `k`, composed as (a*b)(x) = a(b(x)).
inline AutomorphismGroup automorphism_group(const GroupPtr& k, const Caps& caps = default_caps()) {
  if (k->order() > caps.automorphism_order)
    throw Error(ErrorKind::SizeCapExceeded, "automorphism enumeration capped at order " +
                                                std::to_string(caps.automorphism_order));
  AutomorphismGroup out;
  detail::for_each_isomorphism(*k, *k, [&](const std::vector<Element>& m) {
    out.maps.push_back(m);
    return true;
  });
  std::sort(out.maps.begin(), out.maps.end());
  std::map<std::vector<Element>, Element> index;
  for (std::size_t i = 0; i < out.maps.size(); ++i) index[out.maps[i]] = static_cast<Element>(i);
  const std::size_t m = out.maps.size();
  std::vector<Element> table(m * m);
  std::vector<Element> comp(k->order());
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      for (Element x = 0; x < k->order(); ++x) comp[x] = out.maps[a][out.maps[b][x]];
      table[a * m + b] = index.at(comp);
    }
  out.group = make_group_flat(m, std::move(table), "Aut(" + k->name() + ")");
  return out;
}

}  // namespace minflow
