#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "minflow/coset.hpp"
#include "minflow/group.hpp"
#include "minflow/subgroup.hpp"
#include "minflow/union_find.hpp"

namespace minflow {

using Point = std::uint32_t;

// A left action of a finite group on {0 .. size-1}, stored as a dense
// |G| x size table. Continuity is vacuous on finite discrete spaces; a base
// point, when present, has the whole phase set as its orbit (finite "dense
// orbit").
class Flow {
 public:
  const GroupPtr& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return size_; }
  Point act(Element g, Point x) const noexcept { return action_[g * size_ + x]; }
  const std::vector<Point>& table() const noexcept { return action_; }
  std::optional<Point> base_point() const noexcept { return base_; }

  bool operator==(const Flow& other) const noexcept {
    return group_->same_table(*other.group_) && size_ == other.size_ &&
           action_ == other.action_ && base_ == other.base_;
  }

 private:
  friend Flow make_flow(GroupPtr, std::size_t, std::vector<Point>, std::optional<Point>);
  Flow() = default;

  GroupPtr group_;
  std::size_t size_ = 0;
  std::vector<Point> action_;
  std::optional<Point> base_;
};

namespace detail {

inline std::vector<bool> orbit_mask(const Group& g, std::size_t size, const std::vector<Point>& a,
                                    Point start) {
  std::vector<bool> seen(size, false);
  std::vector<Point> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    Point x = stack.back();
    stack.pop_back();
    for (Element s : g.generators()) {
      Point y = a[s * size + x];
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  return seen;
}

}  // namespace detail

/// Validates the identity and action-law axioms and the base point orbit.
/// The action law is checked for every (g, h, x) when |G|^2 |X| <= 4e6;
/// above that h ranges over a generating set, which is equivalent.
inline Flow make_flow(GroupPtr group, std::size_t size, std::vector<Point> action,
                      std::optional<Point> base_point = std::nullopt) {
  const Group& g = *group;
  if (size == 0) throw Error(ErrorKind::MalformedTable, "flow with empty phase set");
  if (action.size() != g.order() * size)
    throw Error(ErrorKind::MalformedTable, "action table has " + std::to_string(action.size()) +
                                               " entries, expected " +
                                               std::to_string(g.order() * size));
  for (std::size_t i = 0; i < action.size(); ++i)
    if (action[i] >= size)
      throw Error(ErrorKind::MalformedTable, "action(" + std::to_string(i / size) + "," +
                                                 std::to_string(i % size) + ") out of range");
  for (Point x = 0; x < size; ++x)
    if (action[x] != x)
      throw Error(ErrorKind::IdentityActsNontrivially,
                  "e . " + std::to_string(x) + " = " + std::to_string(action[x]));

  auto law = [&](Element a, Element b) {
    const Element ab = g.op(a, b);
    for (Point x = 0; x < size; ++x)
      if (action[ab * size + x] != action[a * size + action[b * size + x]]) {
        std::ostringstream os;
        os << "g=" << a << " h=" << b << " x=" << x << ": (gh).x = " << action[ab * size + x]
           << " but g.(h.x) = " << action[a * size + action[b * size + x]];
        throw Error(ErrorKind::ActionLawViolated, os.str());
      }
  };
  const bool full = g.order() * g.order() * size <= 4'000'000;
  for (Element a = 0; a < g.order(); ++a) {
    if (full) {
      for (Element b = 0; b < g.order(); ++b) law(a, b);
    } else {
      for (Element b : g.generators()) law(a, b);
    }
  }

  if (base_point) {
    if (*base_point >= size)
      throw Error(ErrorKind::MalformedTable, "base point out of range");
    auto seen = detail::orbit_mask(g, size, action, *base_point);
    auto miss = std::find(seen.begin(), seen.end(), false);
    if (miss != seen.end())
      throw Error(ErrorKind::BasePointOrbitNotFull,
                  "point " + std::to_string(miss - seen.begin()) + " not in orbit of base point " +
                      std::to_string(*base_point));
  }

  Flow f;
  f.group_ = std::move(group);
  f.size_ = size;
  f.action_ = std::move(action);
  f.base_ = base_point;
  return f;
}

/// Row-per-group-element overload.
inline Flow make_flow(GroupPtr group, const std::vector<std::vector<Point>>& rows,
                      std::optional<Point> base_point = std::nullopt) {
  if (rows.size() != group->order())
    throw Error(ErrorKind::MalformedTable, "action has " + std::to_string(rows.size()) +
                                               " rows for a group of order " +
                                               std::to_string(group->order()));
  const std::size_t size = rows.empty() ? 0 : rows[0].size();
  std::vector<Point> flat;
  for (std::size_t g = 0; g < rows.size(); ++g) {
    if (rows[g].size() != size)
      throw Error(ErrorKind::MalformedTable, "action row " + std::to_string(g) + " has wrong length");
    flat.insert(flat.end(), rows[g].begin(), rows[g].end());
  }
  return make_flow(std::move(group), size, std::move(flat), base_point);
}

/// G acting on itself by g . x = gx, based at e.
inline Flow left_translation_flow(const GroupPtr& g) {
  return make_flow(g, g->order(), g->table(), Point{0});
}

/// Universal minimal flow; for a compact (here finite) group this is left
/// translation on G.
inline Flow universal_minimal(const GroupPtr& g) { return left_translation_flow(g); }

/// Greatest ambit; for a finite group also left translation on G based at e.
inline Flow greatest_ambit(const GroupPtr& g) { return left_translation_flow(g); }

/// G acting on its left cosets gK, based at K.
inline Flow coset_flow(const CosetSpace& cs) {
  const Group& g = *cs.parent();
  std::vector<Point> a(g.order() * cs.count());
  for (Element x = 0; x < g.order(); ++x)
    for (Coset c = 0; c < cs.count(); ++c) a[x * cs.count() + c] = cs.act(x, c);
  return make_flow(cs.parent(), cs.count(), std::move(a), Point{0});
}

inline Flow coset_flow(const Subgroup& k) { return coset_flow(quotient(k)); }

struct OrbitPartition {
  std::vector<std::uint32_t> orbit_of;  // point -> orbit, orbits numbered by least point
  std::size_t orbit_count = 0;

  std::vector<std::vector<Point>> members() const {
    std::vector<std::vector<Point>> out(orbit_count);
    for (Point x = 0; x < orbit_of.size(); ++x) out[orbit_of[x]].push_back(x);
    return out;
  }
  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out(orbit_count, 0);
    for (auto o : orbit_of) ++out[o];
    return out;
  }
};

namespace detail {

inline OrbitPartition label_partition(DisjointSets& ds) {
  OrbitPartition out;
  out.orbit_of.assign(ds.size(), 0);
  std::vector<std::uint32_t> label(ds.size(), ~0u);
  for (Point x = 0; x < ds.size(); ++x) {
    auto r = ds.find(x);
    if (label[r] == ~0u) label[r] = static_cast<std::uint32_t>(out.orbit_count++);
    out.orbit_of[x] = label[r];
  }
  return out;
}

}  // namespace detail

/// Orbits by union-find over the images of the group's generators.
inline OrbitPartition orbits(const Flow& f) {
  DisjointSets ds(f.size());
  for (Element s : f.group()->generators())
    for (Point x = 0; x < f.size(); ++x) ds.unite(x, f.act(s, x));
  return detail::label_partition(ds);
}

/// Orbits by union-find over the full action table.
inline OrbitPartition orbits_full_sweep(const Flow& f) {
  DisjointSets ds(f.size());
  for (Element g = 0; g < f.group()->order(); ++g)
    for (Point x = 0; x < f.size(); ++x) ds.unite(x, f.act(g, x));
  return detail::label_partition(ds);
}

inline std::size_t stabilizer_order(const Flow& f, Point x) {
  std::size_t k = 0;
  for (Element g = 0; g < f.group()->order(); ++g)
    if (f.act(g, x) == x) ++k;
  return k;
}

inline bool is_minimal(const Flow& f) { return orbits(f).orbit_count == 1; }

inline bool is_free(const Flow& f) {
  for (Element g = 1; g < f.group()->order(); ++g)
    for (Point x = 0; x < f.size(); ++x)
      if (f.act(g, x) == x) return false;
  return true;
}

inline bool is_ambit(const Flow& f) {
  if (!f.base_point()) return false;
  auto p = orbits(f);
  return p.sizes()[p.orbit_of[*f.base_point()]] == f.size();
}

/// An orbit as a flow on its own points (renumbered increasingly), with the
/// embedding into the parent's phase set.
struct Subflow {
  Flow flow;
  std::vector<Point> points;
};

inline std::vector<Subflow> minimal_subflows(const Flow& f) {
  const auto part = orbits(f);
  std::vector<Subflow> out;
  for (auto& pts : part.members()) {
    std::vector<Point> local(f.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) local[pts[i]] = static_cast<Point>(i);
    std::vector<Point> a(f.group()->order() * pts.size());
    for (Element g = 0; g < f.group()->order(); ++g)
      for (std::size_t i = 0; i < pts.size(); ++i) a[g * pts.size() + i] = local[f.act(g, pts[i])];
    out.push_back({make_flow(f.group(), pts.size(), std::move(a), Point{0}), std::move(pts)});
  }
  return out;
}

/// The action of `k` (as a standalone group, element i = k.elements()[i]) on
/// the same phase set. The base point survives only if its K-orbit is full.
inline Flow restrict(const Flow& f, const Subgroup& k) {
  GroupPtr kg = subgroup_as_group(k);
  std::vector<Point> a(k.size() * f.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    for (Point x = 0; x < f.size(); ++x) a[i * f.size() + x] = f.act(k.elements()[i], x);
  std::optional<Point> base;
  if (f.base_point()) {
    auto seen = detail::orbit_mask(*kg, f.size(), a, *f.base_point());
    if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) base = f.base_point();
  }
  return make_flow(std::move(kg), f.size(), std::move(a), base);
}

/// The flow of `source` obtained through a homomorphism into f.group().
inline Flow pullback(const Flow& f, const GroupPtr& source, const std::vector<Element>& hom) {
  if (!is_homomorphism(*source, *f.group(), hom))
    throw Error(ErrorKind::NotAHomomorphism, "pullback map is not a homomorphism");
  std::vector<Point> a(source->order() * f.size());
  for (Element g = 0; g < source->order(); ++g)
    for (Point x = 0; x < f.size(); ++x) a[g * f.size() + x] = f.act(hom[g], x);
  std::optional<Point> base;
  if (f.base_point()) {
    auto seen = detail::orbit_mask(*source, f.size(), a, *f.base_point());
    if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) base = f.base_point();
  }
  return make_flow(source, f.size(), std::move(a), base);
}

/// G/K acting on the K-orbits of f by (gK) . Kx = K(gx).
struct OrbitSpaceFlow {
  Flow flow;               // over cosets.quotient_group()
  CosetSpace cosets;
  OrbitPartition k_orbits; // point of f -> point of `flow`
};

inline OrbitSpaceFlow orbit_space_flow(const Flow& f, const Subgroup& k) {
  const Group& g = *f.group();
  if (!is_normal(g, k))
    throw Error(ErrorKind::NotNormal, "orbit space flow needs a normal subgroup");
  CosetSpace cs = quotient(k);
  DisjointSets ds(f.size());
  for (Element y : k.elements())
    for (Point x = 0; x < f.size(); ++x) ds.unite(x, f.act(y, x));
  OrbitPartition part = detail::label_partition(ds);
  const auto members = part.members();

  const std::size_t m = part.orbit_count;
  std::vector<Point> a(cs.count() * m);
  for (Coset c = 0; c < cs.count(); ++c)
    for (std::size_t o = 0; o < m; ++o)
      a[c * m + o] = part.orbit_of[f.act(cs.representative(c), members[o][0])];
  // Well-definedness: every g in the coset and every x in the orbit agree.
  for (Element x = 0; x < g.order(); ++x)
    for (Point p = 0; p < f.size(); ++p)
      if (part.orbit_of[f.act(x, p)] != a[cs.coset_of(x) * m + part.orbit_of[p]])
        throw Error(ErrorKind::IllDefinedQuotientAction,
                    "g=" + std::to_string(x) + " x=" + std::to_string(p));
  std::optional<Point> base;
  if (f.base_point()) base = part.orbit_of[*f.base_point()];
  Flow q = make_flow(cs.quotient_group(), m, std::move(a), base);
  return {std::move(q), std::move(cs), std::move(part)};
}

/// Diagonal action g(x, y) = (gx, gy); point (x, y) is x * |Y| + y.
inline Flow product_flow(const Flow& f, const Flow& h) {
  if (!f.group()->same_table(*h.group()))
    throw Error(ErrorKind::GroupMismatch, "product of flows over different groups");
  const std::size_t n = f.size() * h.size();
  std::vector<Point> a(f.group()->order() * n);
  for (Element g = 0; g < f.group()->order(); ++g)
    for (Point x = 0; x < f.size(); ++x)
      for (Point y = 0; y < h.size(); ++y)
        a[g * n + x * h.size() + y] = static_cast<Point>(f.act(g, x) * h.size() + h.act(g, y));
  std::optional<Point> base;
  if (f.base_point() && h.base_point()) {
    Point b = static_cast<Point>(*f.base_point() * h.size() + *h.base_point());
    auto seen = detail::orbit_mask(*f.group(), n, a, b);
    if (std::all_of(seen.begin(), seen.end(), [](bool v) { return v; })) base = b;
  }
  return make_flow(f.group(), n, std::move(a), base);
}

}  // namespace minflow
