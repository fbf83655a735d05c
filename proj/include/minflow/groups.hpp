#pragma once

#include <string>
#include <vector>

#include "minflow/caps.hpp"
#include "minflow/group.hpp"
#include "minflow/perm.hpp"

// Element encodings:
//   cyclic(n)      residue k is element k
//   symmetric(n)   permutations of {0..n-1} in lexicographic rank order,
//                  op(a, b) = a o b (apply b first)
//   dihedral(n)    r^k is k, s r^k is n + k; order 2n
//   quaternion8()  1, i, j, k, -1, -i, -j, -k
//   direct_product (a, b) is a * |B| + b

namespace minflow {

inline GroupPtr cyclic(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::MalformedTable, "cyclic(0)");
  std::vector<Element> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Element>((a + b) % n);
  return make_group_flat(n, std::move(t), "C" + std::to_string(n));
}

inline GroupPtr symmetric(std::size_t n, const Caps& caps = default_caps()) {
  if (n == 0) throw Error(ErrorKind::MalformedTable, "symmetric(0)");
  if (n > caps.symmetric_degree)
    throw Error(ErrorKind::SizeCapExceeded,
                "symmetric(" + std::to_string(n) + ") exceeds degree cap " +
                    std::to_string(caps.symmetric_degree));
  const auto perms = perm::all_lex(n);
  const std::size_t m = perms.size();
  std::vector<Element> t(m * m);
  std::map<Element, std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    std::string s = "[";
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(perms[a][i]);
    labels[static_cast<Element>(a)] = s + "]";
    for (std::size_t b = 0; b < m; ++b)
      t[a * m + b] = static_cast<Element>(perm::lex_rank(perm::compose(perms[a], perms[b])));
  }
  return make_group_flat(m, std::move(t), "S" + std::to_string(n), std::move(labels));
}

inline GroupPtr dihedral(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::MalformedTable, "dihedral(0)");
  const std::size_t m = 2 * n;
  auto enc = [n](bool refl, std::size_t k) { return static_cast<Element>((refl ? n : 0) + k % n); };
  std::vector<Element> t(m * m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const bool sx = x >= n, sy = y >= n;
      const std::size_t a = x % n, b = y % n;
      // r^a r^b = r^(a+b); r^a s r^b = s r^(b-a); s r^a r^b = s r^(a+b); s r^a s r^b = r^(b-a)
      if (!sx && !sy) t[x * m + y] = enc(false, a + b);
      else if (!sx && sy) t[x * m + y] = enc(true, b + n - a);
      else if (sx && !sy) t[x * m + y] = enc(true, a + b);
      else t[x * m + y] = enc(false, b + n - a);
    }
  return make_group_flat(m, std::move(t), "D" + std::to_string(n));
}

inline GroupPtr quaternion8() {
  // Unit products for 1,i,j,k with sign: i*j = k, j*k = i, k*i = j, i*i = -1.
  static constexpr int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<Element> t(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int ux = x % 4, uy = y % 4;
      const int s = (x / 4 + y / 4 + sign[ux][uy]) % 2;
      t[x * 8 + y] = static_cast<Element>(s * 4 + unit[ux][uy]);
    }
  std::map<Element, std::string> labels{{0, "1"},  {1, "i"},  {2, "j"},  {3, "k"},
                                        {4, "-1"}, {5, "-i"}, {6, "-j"}, {7, "-k"}};
  return make_group_flat(8, std::move(t), "Q8", std::move(labels));
}

inline GroupPtr direct_product(const Group& a, const Group& b, std::string name = {}) {
  const std::size_t na = a.order(), nb = b.order(), m = na * nb;
  std::vector<Element> t(m * m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      t[x * m + y] = static_cast<Element>(a.op(static_cast<Element>(x / nb), static_cast<Element>(y / nb)) * nb +
                                          b.op(static_cast<Element>(x % nb), static_cast<Element>(y % nb)));
  if (name.empty()) name = a.name() + "x" + b.name();
  return make_group_flat(m, std::move(t), std::move(name));
}

inline GroupPtr klein_four() { return direct_product(*cyclic(2), *cyclic(2), "V4"); }

/// g^k with mixed-radix element index (first factor most significant).
inline GroupPtr direct_power(const Group& g, std::size_t k, std::string name = {}) {
  GroupPtr acc = cyclic(1);
  for (std::size_t i = 0; i < k; ++i) acc = direct_product(*acc, g);
  if (name.empty()) name = g.name() + "^" + std::to_string(k);
  return make_group_flat(acc->order(), acc->table(), std::move(name));
}

}  // namespace minflow
