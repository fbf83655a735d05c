#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "minflow/error.hpp"

namespace minflow {

using Element = std::uint32_t;

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// Finite group stored as a dense Cayley table. Element 0 is always the
// identity. Instances are produced only by make_group(), which validates
// every axiom, and are immutable afterwards.
class Group {
 public:
  static constexpr Element identity = 0;

  std::size_t order() const noexcept { return order_; }
  const std::string& name() const noexcept { return name_; }

  Element op(Element a, Element b) const noexcept { return table_[a * order_ + b]; }
  Element inverse(Element a) const noexcept { return inverse_[a]; }
  Element conjugate(Element g, Element x) const noexcept { return op(op(g, x), inverse(g)); }

  std::span<const Element> row(Element a) const noexcept {
    return {table_.data() + a * order_, order_};
  }
  const std::vector<Element>& table() const noexcept { return table_; }
  const std::vector<Element>& inverses() const noexcept { return inverse_; }

  // A small generating set found greedily (largest element order first).
  const std::vector<Element>& generators() const noexcept { return generators_; }

  const std::map<Element, std::string>& labels() const noexcept { return labels_; }
  std::string label(Element x) const {
    auto it = labels_.find(x);
    return it == labels_.end() ? std::to_string(x) : it->second;
  }

  std::size_t element_order(Element x) const noexcept {
    std::size_t k = 1;
    for (Element y = x; y != identity; y = op(y, x)) ++k;
    return k;
  }

  Element power(Element x, std::size_t k) const noexcept {
    Element r = identity;
    for (std::size_t i = 0; i < k; ++i) r = op(r, x);
    return r;
  }

  bool is_abelian() const noexcept {
    for (Element a = 0; a < order_; ++a)
      for (Element b = a + 1; b < order_; ++b)
        if (op(a, b) != op(b, a)) return false;
    return true;
  }

  /// Same order and the same multiplication table (names may differ).
  bool same_table(const Group& other) const noexcept {
    return order_ == other.order_ && table_ == other.table_;
  }

 private:
  friend GroupPtr make_group_flat(std::size_t, std::vector<Element>, std::string,
                                  std::map<Element, std::string>, std::vector<std::string>*);
  Group() = default;

  std::size_t order_ = 0;
  std::string name_;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<Element> generators_;
  std::map<Element, std::string> labels_;
};

namespace detail {

// Closure of {e} under right multiplication by `gens`. Does not rely on
// associativity, so it is usable before the table has been validated.
inline std::vector<bool> right_closure(std::size_t n, const std::vector<Element>& table,
                                       const std::vector<Element>& gens) {
  std::vector<bool> seen(n, false);
  std::vector<Element> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    Element x = stack.back();
    stack.pop_back();
    for (Element g : gens) {
      Element y = table[x * n + g];
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  return seen;
}

inline std::vector<Element> greedy_generators(std::size_t n, const std::vector<Element>& table) {
  std::vector<std::size_t> orders(n, 1);
  for (Element x = 0; x < n; ++x) {
    Element y = x;
    std::size_t k = 1;
    while (y != 0 && k <= n) {
      y = table[y * n + x];
      ++k;
    }
    orders[x] = k;
  }
  std::vector<Element> by_order(n);
  std::iota(by_order.begin(), by_order.end(), Element{0});
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](Element a, Element b) { return orders[a] > orders[b]; });

  std::vector<Element> gens;
  std::vector<bool> reached = right_closure(n, table, gens);
  for (Element x : by_order) {
    if (reached[x]) continue;
    gens.push_back(x);
    reached = right_closure(n, table, gens);
    if (std::all_of(reached.begin(), reached.end(), [](bool b) { return b; })) break;
  }
  return gens;
}

}  // namespace detail

/// Validates a row-major n*n table and builds a Group. If the identity is
/// not at index 0 it is swapped there (and `warnings` receives a note).
inline GroupPtr make_group_flat(std::size_t n, std::vector<Element> table, std::string name,
                                std::map<Element, std::string> labels = {},
                                std::vector<std::string>* warnings = nullptr) {
  if (n == 0) throw Error(ErrorKind::MalformedTable, "empty table");
  if (table.size() != n * n)
    throw Error(ErrorKind::MalformedTable, "table has " + std::to_string(table.size()) +
                                               " entries, expected " + std::to_string(n * n));
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] >= n)
      throw Error(ErrorKind::MalformedTable, "entry (" + std::to_string(i / n) + "," +
                                                 std::to_string(i % n) + ") = " +
                                                 std::to_string(table[i]) + " out of range");

  // Latin square.
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  for (std::size_t r = 0; r < n; ++r) {
    ++stamp;
    for (std::size_t c = 0; c < n; ++c) {
      Element v = table[r * n + c];
      if (seen[v] == stamp)
        throw Error(ErrorKind::NotInvertible,
                    "row " + std::to_string(r) + " is not a permutation (value " +
                        std::to_string(v) + " repeats)");
      seen[v] = stamp;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    ++stamp;
    for (std::size_t r = 0; r < n; ++r) {
      Element v = table[r * n + c];
      if (seen[v] == stamp)
        throw Error(ErrorKind::NotInvertible,
                    "column " + std::to_string(c) + " is not a permutation (value " +
                        std::to_string(v) + " repeats)");
      seen[v] = stamp;
    }
  }

  // Identity: a row and column that are both the identity permutation.
  std::size_t e = n;
  for (std::size_t x = 0; x < n && e == n; ++x) {
    bool ok = true;
    for (std::size_t y = 0; y < n && ok; ++y)
      ok = table[x * n + y] == y && table[y * n + x] == y;
    if (ok) e = x;
  }
  if (e == n) throw Error(ErrorKind::NoIdentity, "no two-sided identity element");

  if (e != 0) {
    auto relabel = [e](Element x) -> Element {
      return x == 0 ? static_cast<Element>(e) : (x == e ? 0 : x);
    };
    std::vector<Element> moved(n * n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        moved[relabel(a) * n + relabel(b)] = relabel(table[a * n + b]);
    table = std::move(moved);
    std::map<Element, std::string> moved_labels;
    for (auto& [k, v] : labels) moved_labels[relabel(k)] = v;
    labels = std::move(moved_labels);
    if (warnings)
      warnings->push_back("identity found at index " + std::to_string(e) +
                          "; swapped with index 0");
  }

  std::vector<Element> inverse(n);
  for (Element x = 0; x < n; ++x) {
    auto row = std::span<const Element>(table.data() + x * n, n);
    Element y = static_cast<Element>(std::find(row.begin(), row.end(), 0) - row.begin());
    if (table[y * n + x] != 0)
      throw Error(ErrorKind::NotInvertible,
                  "element " + std::to_string(x) + " has no two-sided inverse");
    inverse[x] = y;
  }

  std::vector<Element> gens = detail::greedy_generators(n, table);

  auto assoc_fail = [&](std::size_t a, std::size_t b, std::size_t c) {
    std::ostringstream os;
    os << "(" << a << "*" << b << ")*" << c << " != " << a << "*(" << b << "*" << c << ")";
    throw Error(ErrorKind::NotAssociative, os.str());
  };
  if (n <= 256) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const Element ab = table[a * n + b];
        for (std::size_t c = 0; c < n; ++c)
          if (table[ab * n + c] != table[a * n + table[b * n + c]]) assoc_fail(a, b, c);
      }
  } else {
    // Light's test: the middle argument only needs to range over generators.
    for (std::size_t a = 0; a < n; ++a)
      for (Element b : gens) {
        const Element ab = table[a * n + b];
        for (std::size_t c = 0; c < n; ++c)
          if (table[ab * n + c] != table[a * n + table[b * n + c]]) assoc_fail(a, b, c);
      }
  }

  auto g = std::shared_ptr<Group>(new Group());
  g->order_ = n;
  g->name_ = std::move(name);
  g->table_ = std::move(table);
  g->inverse_ = std::move(inverse);
  g->generators_ = std::move(gens);
  g->labels_ = std::move(labels);
  return g;
}

/// Square-table overload.
inline GroupPtr make_group(const std::vector<std::vector<Element>>& table, std::string name,
                           std::map<Element, std::string> labels = {},
                           std::vector<std::string>* warnings = nullptr) {
  const std::size_t n = table.size();
  std::vector<Element> flat;
  flat.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (table[r].size() != n)
      throw Error(ErrorKind::MalformedTable, "row " + std::to_string(r) + " has " +
                                                 std::to_string(table[r].size()) +
                                                 " entries, expected " + std::to_string(n));
    flat.insert(flat.end(), table[r].begin(), table[r].end());
  }
  return make_group_flat(n, std::move(flat), std::move(name), std::move(labels), warnings);
}

/// Checks that `map` (indexed by elements of `a`) is a homomorphism into `b`.
inline bool is_homomorphism(const Group& a, const Group& b, std::span<const Element> map) {
  if (map.size() != a.order()) return false;
  for (Element x : map)
    if (x >= b.order()) return false;
  for (Element x = 0; x < a.order(); ++x)
    for (Element y = 0; y < a.order(); ++y)
      if (map[a.op(x, y)] != b.op(map[x], map[y])) return false;
  return true;
}

}  // namespace minflow
