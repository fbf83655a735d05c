#pragma once

#include <string>
#include <vector>

#include "minflow/group.hpp"
#include "minflow/subgroup.hpp"

namespace minflow {

using Automorphism = std::vector<Element>;

// H |x K on pairs (h, k), encoded h * |K| + k, with
//   (h1, k1)(h2, k2) = (h1 h2, theta(h2^-1)(k1) k2).
// Equivalently (h, k) = s(h) k and theta(h)(k) = s(h) k s(h)^-1, where s is
// the homomorphic section h -> (h, e).
struct SemidirectProduct {
  GroupPtr group;
  GroupPtr complement_group;  // H
  GroupPtr normal_group;      // K
  std::vector<Automorphism> theta;
  Subgroup normal_factor;  // {(e, k)}
  Subgroup complement;     // {(h, e)}
  std::vector<Element> section;     // H -> G, a homomorphism
  std::vector<Element> projection;  // G -> H
  std::vector<Element> embed;       // K -> G

  Element pair(Element h, Element k) const {
    return static_cast<Element>(h * normal_group->order() + k);
  }
};

inline bool is_automorphism(const Group& k, const Automorphism& a) {
  if (a.size() != k.order()) return false;
  std::vector<bool> hit(k.order(), false);
  for (Element x : a) {
    if (x >= k.order() || hit[x]) return false;
    hit[x] = true;
  }
  return is_homomorphism(k, k, a);
}

inline SemidirectProduct semidirect_product(const GroupPtr& h, const GroupPtr& k,
                                            std::vector<Automorphism> theta, std::string name = {}) {
  if (theta.size() != h->order())
    throw Error(ErrorKind::NotAHomomorphism, "theta has " + std::to_string(theta.size()) +
                                                 " entries for |H| = " + std::to_string(h->order()));
  for (Element x = 0; x < h->order(); ++x)
    if (!is_automorphism(*k, theta[x]))
      throw Error(ErrorKind::NotAnAutomorphism, "theta(" + std::to_string(x) + ")");
  for (Element a = 0; a < h->order(); ++a)
    for (Element b = 0; b < h->order(); ++b)
      for (Element x = 0; x < k->order(); ++x)
        if (theta[h->op(a, b)][x] != theta[a][theta[b][x]])
          throw Error(ErrorKind::NotAHomomorphism, "theta(" + std::to_string(a) + "*" +
                                                       std::to_string(b) + ") differs at " +
                                                       std::to_string(x));

  const std::size_t nh = h->order(), nk = k->order(), m = nh * nk;
  std::vector<Element> table(m * m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const auto h1 = static_cast<Element>(x / nk), k1 = static_cast<Element>(x % nk);
      const auto h2 = static_cast<Element>(y / nk), k2 = static_cast<Element>(y % nk);
      table[x * m + y] = static_cast<Element>(
          h->op(h1, h2) * nk + k->op(theta[h->inverse(h2)][k1], k2));
    }
  if (name.empty()) name = h->name() + "|x" + k->name();
  GroupPtr g = make_group_flat(m, std::move(table), std::move(name));

  std::vector<Element> kk, hh, section(nh), projection(m), embed(nk);
  for (Element x = 0; x < nk; ++x) kk.push_back(x), embed[x] = x;
  for (Element x = 0; x < nh; ++x)
    hh.push_back(static_cast<Element>(x * nk)), section[x] = static_cast<Element>(x * nk);
  for (Element x = 0; x < m; ++x) projection[x] = static_cast<Element>(x / nk);
  return SemidirectProduct{g,
                           h,
                           k,
                           std::move(theta),
                           Subgroup(g, kk),
                           Subgroup(g, hh),
                           std::move(section),
                           std::move(projection),
                           std::move(embed)};
}

inline std::vector<Automorphism> trivial_action(const Group& h, const Group& k) {
  Automorphism id(k.order());
  std::iota(id.begin(), id.end(), Element{0});
  return std::vector<Automorphism>(h.order(), id);
}

/// x -> x^-1; an automorphism only for abelian k.
inline Automorphism inversion(const Group& k) { return k.inverses(); }

/// theta(h) = a^h for H = cyclic(n) (element h is the residue h).
inline std::vector<Automorphism> cyclic_action(std::size_t n, const Automorphism& a) {
  std::vector<Automorphism> theta;
  Automorphism cur(a.size());
  std::iota(cur.begin(), cur.end(), Element{0});
  for (std::size_t i = 0; i < n; ++i) {
    theta.push_back(cur);
    Automorphism next(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) next[x] = a[cur[x]];
    cur = std::move(next);
  }
  return theta;
}

}  // namespace minflow
