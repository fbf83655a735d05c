#pragma once

// Brute-force reference computations for tests. Nothing here calls the
// library's search or enumeration routines; inputs are plain tables.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "minflow/flow.hpp"
#include "minflow/group.hpp"

namespace oracle {

using minflow::Element;
using minflow::Group;
using minflow::Point;

// Cayley table of S_n built from composing permutations listed in
// lexicographic order, (p*q)(i) = p(q(i)).
inline std::vector<std::vector<Element>> symmetric_table(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index = [&](const std::vector<int>& q) {
    return static_cast<Element>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<Element>> t(perms.size(), std::vector<Element>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = index(c);
    }
  return t;
}

inline bool closed_subset(const Group& g, const std::vector<Element>& s) {
  std::vector<bool> in(g.order(), false);
  for (Element x : s) in[x] = true;
  if (!in[0]) return false;
  for (Element a : s)
    for (Element b : s)
      if (!in[g.op(a, b)]) return false;
  return true;
}

// Every subset closed under the product (finite => subgroup). Order <= 16.
inline std::set<std::vector<Element>> all_subgroups(const Group& g) {
  std::set<std::vector<Element>> out;
  const std::size_t n = g.order();
  for (std::uint32_t mask = 1; mask < (1u << n); mask += 2) {  // element 0 always in
    std::vector<Element> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) s.push_back(static_cast<Element>(i));
    if (closed_subset(g, s)) out.insert(s);
  }
  return out;
}

inline bool normal_by_conjugation(const Group& g, const std::vector<Element>& k) {
  std::set<Element> ks(k.begin(), k.end());
  for (Element x = 0; x < g.order(); ++x)
    for (Element y : k) {
      Element inv = 0;
      for (Element z = 0; z < g.order(); ++z)
        if (g.op(x, z) == 0) inv = z;
      if (!ks.count(g.op(g.op(x, y), inv))) return false;
    }
  return true;
}

// Group isomorphism by trying every bijection fixing 0. Order <= 8.
inline bool groups_isomorphic(const Group& a, const Group& b) {
  if (a.order() != b.order()) return false;
  std::vector<Element> p(a.order());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (Element x = 0; x < a.order() && ok; ++x)
      for (Element y = 0; y < a.order() && ok; ++y) ok = p[a.op(x, y)] == b.op(p[x], p[y]);
    if (ok) return true;
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return false;
}

// Flow isomorphism by trying every bijection. Size <= 8.
inline bool flows_isomorphic(const minflow::Flow& a, const minflow::Flow& b) {
  if (a.size() != b.size()) return false;
  std::vector<Point> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (Element g = 0; g < a.group()->order() && ok; ++g)
      for (Point x = 0; x < a.size() && ok; ++x) ok = p[a.act(g, x)] == b.act(g, p[x]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// Orbit of x by repeated application of every element (no union-find).
inline std::set<Point> orbit(const minflow::Flow& f, Point x) {
  std::set<Point> o;
  for (Element g = 0; g < f.group()->order(); ++g) o.insert(f.act(g, x));
  return o;
}

}  // namespace oracle
