#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "minflow/caps.hpp"
#include "minflow/flow.hpp"

namespace minflow {

struct FlowMorphism {
  Flow source;
  Flow target;
  std::vector<Point> map;
  bool checked = false;  // equivariance (and bijectivity, for isomorphisms) re-verified
};

/// First (g, x) with map(g.x) != g.map(x), as text; nullopt if equivariant.
inline std::optional<std::string> equivariance_violation(const Flow& src, const Flow& tgt,
                                                         const std::vector<Point>& map) {
  if (!src.group()->same_table(*tgt.group())) return "flows are over different groups";
  if (map.size() != src.size()) return "map has wrong length";
  for (Point y : map)
    if (y >= tgt.size()) return "map value out of range";
  for (Element g = 0; g < src.group()->order(); ++g)
    for (Point x = 0; x < src.size(); ++x)
      if (map[src.act(g, x)] != tgt.act(g, map[x])) {
        std::ostringstream os;
        os << "g=" << g << " x=" << x << ": map(g.x) = " << map[src.act(g, x)]
           << ", g.map(x) = " << tgt.act(g, map[x]);
        return os.str();
      }
  return std::nullopt;
}

inline bool is_bijection(const std::vector<Point>& map, std::size_t target_size) {
  if (map.size() != target_size) return false;
  std::vector<bool> hit(target_size, false);
  for (Point y : map) {
    if (y >= target_size || hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

/// Validated morphism; throws NotEquivariant / NotBijective.
inline FlowMorphism make_morphism(const Flow& src, const Flow& tgt, std::vector<Point> map,
                                  bool require_bijective) {
  if (auto v = equivariance_violation(src, tgt, map)) throw Error(ErrorKind::NotEquivariant, *v);
  if (require_bijective && !is_bijection(map, tgt.size()))
    throw Error(ErrorKind::NotBijective, "map is not a bijection");
  return FlowMorphism{src, tgt, std::move(map), true};
}

struct IsoResult {
  std::optional<FlowMorphism> morphism;
  std::string witness;  // why no isomorphism exists, when morphism is empty

  explicit operator bool() const noexcept { return morphism.has_value(); }
};

namespace detail {

inline std::string list_text(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

// Maps the a-orbit through x0 by g.x0 -> g.y. Fails on a conflict, or, when
// `used` is given, on hitting an already-used target point.
inline bool extend_seed(const Flow& a, const Flow& b, Point x0, Point y, std::vector<Point>& map,
                        std::vector<bool>* used, std::vector<Point>& touched) {
  constexpr Point unset = ~Point{0};
  touched.clear();
  for (Element g = 0; g < a.group()->order(); ++g) {
    const Point p = a.act(g, x0), q = b.act(g, y);
    if (map[p] == unset) {
      if (used && (*used)[q]) goto fail;
      map[p] = q;
      if (used) (*used)[q] = true;
      touched.push_back(p);
    } else if (map[p] != q) {
      goto fail;
    }
  }
  return true;
fail:
  for (Point p : touched) {
    if (used) (*used)[map[p]] = false;
    map[p] = unset;
  }
  touched.clear();
  return false;
}

}  // namespace detail

/// Backtracking search for an equivariant bijection a -> b, pruned by orbit
/// sizes and point-stabilizer orders. Orbits of `a` are taken in order; for
/// each, target orbits and seed points are tried in increasing index, so the
/// returned morphism is deterministic. Never consults any constructed map.
inline IsoResult find_isomorphism(const Flow& a, const Flow& b, const Caps& caps = default_caps()) {
  if (!a.group()->same_table(*b.group()))
    throw Error(ErrorKind::GroupMismatch, "flows are over different groups");
  if (a.size() > caps.iso_points || b.size() > caps.iso_points)
    throw Error(ErrorKind::SizeCapExceeded, "iso search capped at " +
                                                std::to_string(caps.iso_points) + " points");
  if (a.size() != b.size())
    return {std::nullopt, "phase sets differ in size: " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size())};
  const auto pa = orbits(a), pb = orbits(b);
  if (detail::list_text(pa.sizes()) != detail::list_text(pb.sizes()))
    return {std::nullopt, "orbit size multisets differ: " + detail::list_text(pa.sizes()) +
                              " vs " + detail::list_text(pb.sizes())};
  std::vector<std::size_t> sa(a.size()), sb(b.size());
  for (Point x = 0; x < a.size(); ++x) sa[x] = stabilizer_order(a, x), sb[x] = stabilizer_order(b, x);
  if (detail::list_text(sa) != detail::list_text(sb))
    return {std::nullopt, "stabilizer order multisets differ: " + detail::list_text(sa) + " vs " +
                              detail::list_text(sb)};

  const auto ma = pa.members(), mb = pb.members();
  std::vector<Point> map(a.size(), ~Point{0});
  std::vector<bool> used(b.size(), false), orbit_used(mb.size(), false);
  std::string last_failure;

  std::function<bool(std::size_t)> solve = [&](std::size_t i) -> bool {
    if (i == ma.size()) return true;
    const Point x0 = ma[i][0];
    bool any_seed = false;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      if (orbit_used[j] || mb[j].size() != ma[i].size()) continue;
      for (Point y : mb[j]) {
        if (sb[y] != sa[x0]) continue;
        std::vector<Point> touched;
        if (!detail::extend_seed(a, b, x0, y, map, &used, touched)) continue;
        any_seed = true;
        orbit_used[j] = true;
        if (solve(i + 1)) return true;
        orbit_used[j] = false;
        for (Point p : touched) used[map[p]] = false, map[p] = ~Point{0};
      }
    }
    if (!any_seed)
      last_failure = "no seed extends equivariantly for the orbit of point " + std::to_string(x0);
    return false;
  };

  if (!solve(0))
    return {std::nullopt, last_failure.empty() ? "no consistent orbit matching" : last_failure};
  // Re-check exhaustively before handing the morphism out.
  return {make_morphism(a, b, std::move(map), true), {}};
}

/// First equivariant map a -> b found orbit by orbit (seed targets in
/// increasing index). Onto whenever b is transitive.
inline std::optional<FlowMorphism> find_homomorphism(const Flow& a, const Flow& b) {
  if (!a.group()->same_table(*b.group()))
    throw Error(ErrorKind::GroupMismatch, "flows are over different groups");
  const auto ma = orbits(a).members();
  std::vector<Point> map(a.size(), ~Point{0}), touched;
  for (const auto& orbit : ma) {
    bool ok = false;
    for (Point y = 0; y < b.size() && !ok; ++y)
      ok = detail::extend_seed(a, b, orbit[0], y, map, nullptr, touched);
    if (!ok) return std::nullopt;
  }
  return make_morphism(a, b, std::move(map), false);
}

}  // namespace minflow
