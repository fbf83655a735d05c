#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minflow/caps.hpp"
#include "minflow/group.hpp"
#include "minflow/groups.hpp"
#include "minflow/perm.hpp"
#include "minflow/perm_group.hpp"
#include "minflow/subgroup.hpp"

// Automorphisms of the rooted n-ary tree of depth d, W_d = S_n |x W_{d-1}^n.
//
// An element is (sigma, w_0 .. w_{n-1}) with sigma in S_n and w_a in W_{d-1};
// it sends the leaf (a, r) to (sigma(a), w_a(r)). Leaves are numbered
// a * n^(d-1) + r. Dense element index:
//   rank(sigma) * M^n + sum_a w_a * M^(n-1-a),   M = |W_{d-1}|,
// so the identity is 0 and W_1 coincides with symmetric(n).
// Products follow the symmetric-group convention (apply the right factor
// first): (sigma, w)(tau, v) = (sigma tau, a -> w_{tau(a)} v_a).

namespace minflow {

inline std::uint64_t factorial(std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t k = 2; k <= n; ++k) r *= k;
  return r;
}

/// (n!)^((n^d - 1)/(n - 1)) for n >= 2; nullopt on 64-bit overflow.
inline std::optional<std::uint64_t> wreath_order_formula(std::size_t n, std::size_t d) {
  std::uint64_t exponent = 0, p = 1;
  for (std::size_t i = 0; i < d; ++i) exponent += p, p *= n;
  const std::uint64_t base = factorial(n);
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
    r *= base;
  }
  return r;
}

// One level of the tower. The dense fields are populated only when the order
// is within Caps::table_order; the permutation representation always is.
struct WreathGroup {
  std::size_t n = 0;
  std::size_t depth = 0;
  std::uint64_t order = 0;
  PermGroup perm;          // on n^depth leaves
  PermGroup kernel_perm;   // level-1 kernel W_{depth-1}^n

  GroupPtr group;                          // dense table, or null
  std::vector<std::size_t> sigma_rank;     // element -> rank of top permutation
  std::vector<std::vector<Element>> children;  // element -> w_0..w_{n-1} (in W_{depth-1})
  std::vector<Permutation> leaf_perms;     // element -> leaf permutation
  std::vector<std::vector<Element>> projection;  // projection[j]: element -> W_j element, j <= depth
  std::optional<Subgroup> level1_kernel;   // kernel of the action on depth-1 vertices

  bool has_table() const noexcept { return group != nullptr; }

  /// Kernel of the restriction to the top j levels (stabilizer of every
  /// depth-j vertex). Requires the dense table.
  Subgroup level_kernel(std::size_t j) const {
    std::vector<Element> k;
    for (Element x = 0; x < group->order(); ++x)
      if (projection.at(j)[x] == Group::identity) k.push_back(x);
    return Subgroup(group, std::move(k));
  }

  /// Local S_n label (lex rank) at every internal vertex, by depth then by
  /// vertex path in lexicographic order. Requires the dense table.
  std::vector<std::size_t> portrait(Element x, const std::vector<WreathGroup>& lower) const {
    std::vector<std::vector<std::size_t>> by_depth(depth);
    collect_portrait(x, lower, 0, by_depth);
    std::vector<std::size_t> out;
    for (auto& row : by_depth) out.insert(out.end(), row.begin(), row.end());
    return out;
  }

 private:
  void collect_portrait(Element x, const std::vector<WreathGroup>& lower, std::size_t offset,
                        std::vector<std::vector<std::size_t>>& by_depth) const {
    by_depth[offset].push_back(sigma_rank[x]);
    if (depth == 1) return;
    for (Element w : children[x]) lower[depth - 2].collect_portrait(w, lower, offset + 1, by_depth);
  }
};

namespace detail {

// Rigid action of sigma on the top branches of a depth-d tree.
inline Permutation rigid_top(const Permutation& sigma, std::size_t block) {
  Permutation p(sigma.size() * block);
  for (std::size_t a = 0; a < sigma.size(); ++a)
    for (std::size_t r = 0; r < block; ++r)
      p[a * block + r] = static_cast<std::uint32_t>(sigma[a] * block + r);
  return p;
}

// g acting inside subtree `a` only.
inline Permutation in_subtree(const Permutation& g, std::size_t a, std::size_t n) {
  const std::size_t block = g.size();
  Permutation p = perm::identity(n * block);
  for (std::size_t r = 0; r < block; ++r)
    p[a * block + r] = static_cast<std::uint32_t>(a * block + g[r]);
  return p;
}

}  // namespace detail

/// Levels W_1 .. W_d of the tower for branching n.
inline std::vector<WreathGroup> wreath_levels(std::size_t n, std::size_t d,
                                              const Caps& caps = default_caps()) {
  if (n < 2 || d < 1)
    throw Error(ErrorKind::MalformedTable, "iterated_wreath needs n >= 2 and d >= 1");
  if (n > caps.symmetric_degree)
    throw Error(ErrorKind::SizeCapExceeded, "branching degree " + std::to_string(n) +
                                                " exceeds symmetric cap");
  std::size_t leaves = 1;
  for (std::size_t i = 0; i < d; ++i) {
    leaves *= n;
    if (leaves > caps.perm_degree)
      throw Error(ErrorKind::SizeCapExceeded, "tree has more than " +
                                                  std::to_string(caps.perm_degree) + " leaves");
  }

  const auto sn = perm::all_lex(n);
  const GroupPtr sym = symmetric(n, caps);
  std::vector<WreathGroup> levels;
  std::size_t block = 1;  // leaves below a depth-1 vertex at the level being built
  for (std::size_t i = 1; i <= d; ++i) {
    const WreathGroup* prev = i > 1 ? &levels.back() : nullptr;
    const std::size_t degree = block * n;

    // Permutation representation: rigid S_n on top, W_{i-1} in subtree 0.
    std::vector<Permutation> gens;
    Permutation swap = perm::identity(n), cycle(n);
    std::swap(swap[0], swap[1]);
    for (std::size_t a = 0; a < n; ++a) cycle[a] = static_cast<std::uint32_t>((a + 1) % n);
    gens.push_back(detail::rigid_top(swap, block));
    if (n > 2) gens.push_back(detail::rigid_top(cycle, block));
    std::vector<Permutation> kernel_gens;
    if (prev)
      for (const auto& g : prev->perm.generators()) {
        gens.push_back(detail::in_subtree(g, 0, n));
        for (std::size_t a = 0; a < n; ++a) kernel_gens.push_back(detail::in_subtree(g, a, n));
      }
    PermGroup pg(degree, std::move(gens));
    PermGroup kg(degree, std::move(kernel_gens));

    WreathGroup w{n, i, pg.order(), std::move(pg), std::move(kg), nullptr, {}, {}, {}, {}, std::nullopt};
    const bool dense_prev = prev == nullptr || prev->has_table();
    if (w.order <= caps.table_order && dense_prev) {
      const std::size_t m = prev ? prev->group->order() : 1;
      std::size_t mn = 1;
      for (std::size_t a = 0; a < n; ++a) mn *= m;
      const std::size_t order = sn.size() * mn;

      w.sigma_rank.resize(order);
      w.children.resize(order);
      for (std::size_t x = 0; x < order; ++x) {
        w.sigma_rank[x] = x / mn;
        std::size_t rest = x % mn;
        std::vector<Element> ch(n);
        for (std::size_t a = n; a-- > 0;) {
          ch[a] = static_cast<Element>(rest % m);
          rest /= m;
        }
        w.children[x] = std::move(ch);
      }
      auto encode = [&](std::size_t rank, const std::vector<Element>& ch) {
        std::size_t idx = 0;
        for (Element c : ch) idx = idx * m + c;
        return static_cast<Element>(rank * mn + idx);
      };

      std::vector<Element> table(order * order);
      std::vector<Element> u(n);
      for (std::size_t x = 0; x < order; ++x) {
        for (std::size_t y = 0; y < order; ++y) {
          const auto& tau = sn[w.sigma_rank[y]];
          for (std::size_t a = 0; a < n; ++a) {
            const Element wa = w.children[x][tau[a]], va = w.children[y][a];
            u[a] = prev ? prev->group->op(wa, va) : 0;
          }
          table[x * order + y] =
              encode(sym->op(static_cast<Element>(w.sigma_rank[x]), static_cast<Element>(w.sigma_rank[y])), u);
        }
      }
      w.group = make_group_flat(order, std::move(table),
                                "W" + std::to_string(n) + "_" + std::to_string(i));

      w.leaf_perms.resize(order);
      for (std::size_t x = 0; x < order; ++x) {
        const auto& sigma = sn[w.sigma_rank[x]];
        Permutation p(degree);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t r = 0; r < block; ++r) {
            const std::size_t inner = prev ? prev->leaf_perms[w.children[x][a]][r] : r;
            p[a * block + r] = static_cast<std::uint32_t>(sigma[a] * block + inner);
          }
        w.leaf_perms[x] = std::move(p);
      }

      w.projection.assign(i + 1, std::vector<Element>(order, 0));
      for (std::size_t x = 0; x < order; ++x) {
        w.projection[i][x] = static_cast<Element>(x);
        for (std::size_t j = 1; j < i; ++j) {
          // Restrict each child to depth j-1 inside W_{j-1}, keep sigma.
          std::vector<Element> ch(n);
          for (std::size_t a = 0; a < n; ++a)
            ch[a] = j == 1 ? 0 : prev->projection[j - 1][w.children[x][a]];
          std::size_t mj = j == 1 ? 1 : levels[j - 2].group->order();
          std::size_t mjn = 1;
          for (std::size_t a = 0; a < n; ++a) mjn *= mj;
          std::size_t idx = 0;
          for (Element c : ch) idx = idx * mj + c;
          w.projection[j][x] = static_cast<Element>(w.sigma_rank[x] * mjn + idx);
        }
      }
      w.level1_kernel = w.level_kernel(1);
    }
    levels.push_back(std::move(w));
    block = degree;
  }
  return levels;
}

/// The depth-d tree automorphism group (last tower level).
inline WreathGroup iterated_wreath(std::size_t n, std::size_t d, const Caps& caps = default_caps()) {
  auto levels = wreath_levels(n, d, caps);
  return std::move(levels.back());
}

/// Inverse of WreathGroup::portrait.
inline Element element_from_portrait(const std::vector<WreathGroup>& levels, std::size_t depth,
                                     const std::vector<std::size_t>& portrait) {
  const std::size_t n = levels.front().n;
  // Split the by-depth listing back into per-child portraits.
  std::vector<std::vector<std::size_t>> rows(depth);
  std::size_t pos = 0, width = 1;
  for (std::size_t t = 0; t < depth; ++t) {
    rows[t].assign(portrait.begin() + static_cast<long>(pos),
                   portrait.begin() + static_cast<long>(pos + width));
    pos += width;
    width *= n;
  }
  if (depth == 1) return static_cast<Element>(rows[0][0]);
  std::vector<Element> ch(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::size_t> sub;
    std::size_t wsub = 1;
    for (std::size_t t = 1; t < depth; ++t) {
      sub.insert(sub.end(), rows[t].begin() + static_cast<long>(a * wsub),
                 rows[t].begin() + static_cast<long>((a + 1) * wsub));
      wsub *= n;
    }
    ch[a] = element_from_portrait(levels, depth - 1, sub);
  }
  const std::size_t m = levels[depth - 2].group->order();
  std::size_t idx = 0, mn = 1;
  for (Element c : ch) idx = idx * m + c, mn *= m;
  return static_cast<Element>(rows[0][0] * mn + idx);
}

}  // namespace minflow
