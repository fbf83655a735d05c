#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace minflow {

using Permutation = std::vector<std::uint32_t>;

namespace perm {

inline Permutation identity(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

/// (p o q)(i) = p(q(i)): apply q first.
inline Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

inline Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
  return r;
}

inline bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

/// All permutations of n letters in lexicographic order (identity first).
inline std::vector<Permutation> all_lex(std::size_t n) {
  std::vector<Permutation> out;
  Permutation p = identity(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Position of p in all_lex(p.size()).
inline std::size_t lex_rank(const Permutation& p) {
  const std::size_t n = p.size();
  std::size_t rank = 0;
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::uint32_t v = 0; v < p[i]; ++v)
      if (!used[v]) ++smaller;
    std::size_t fact = 1;
    for (std::size_t k = 2; k < n - i; ++k) fact *= k;
    rank += smaller * fact;
    used[p[i]] = true;
  }
  return rank;
}

}  // namespace perm
}  // namespace minflow
