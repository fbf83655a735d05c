#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "minflow/error.hpp"
#include "minflow/perm.hpp"

namespace minflow {

// Permutation group given by generators, with a base and strong generating
// set built by the deterministic Schreier-Sims algorithm.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators)
      : degree_(degree), generators_(std::move(generators)) {
    for (const auto& g : generators_)
      if (g.size() != degree_)
        throw Error(ErrorKind::MalformedTable, "generator of wrong degree");
    build();
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<std::uint32_t>& base() const noexcept { return base_; }

  /// Product of the basic orbit lengths.
  std::uint64_t order() const {
    std::uint64_t r = 1;
    for (const auto& lv : levels_) {
      const std::uint64_t len = lv.orbit.size();
      if (r > std::numeric_limits<std::uint64_t>::max() / len)
        throw Error(ErrorKind::SizeCapExceeded, "group order overflows 64 bits");
      r *= len;
    }
    return r;
  }

  bool contains(const Permutation& p) const {
    if (p.size() != degree_) return false;
    auto [residue, level] = strip(p, 0);
    return level == levels_.size() && perm::is_identity(residue);
  }

  /// Orbits of the generated group on {0..degree-1}.
  std::vector<std::vector<std::uint32_t>> orbits() const {
    std::vector<int> seen(degree_, -1);
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint32_t x = 0; x < degree_; ++x) {
      if (seen[x] >= 0) continue;
      out.push_back({x});
      seen[x] = static_cast<int>(out.size() - 1);
      for (std::size_t i = 0; i < out.back().size(); ++i)
        for (const auto& g : generators_) {
          std::uint32_t y = g[out.back()[i]];
          if (seen[y] < 0) {
            seen[y] = seen[x];
            out.back().push_back(y);
          }
        }
    }
    return out;
  }

 private:
  struct Level {
    std::uint32_t point;
    std::vector<Permutation> gens;
    std::vector<std::uint32_t> orbit;
    std::vector<std::optional<Permutation>> transversal;  // u with u(point) = beta
  };

  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const auto beta = g[levels_[i].point];
      if (!levels_[i].transversal[beta]) return {g, i};
      g = perm::compose(perm::inverse(*levels_[i].transversal[beta]), g);
    }
    return {g, levels_.size()};
  }

  void rebuild_levels() {
    levels_.clear();
    for (std::size_t i = 0;; ++i) {
      std::vector<Permutation> gens;
      for (const auto& s : strong_)
        if (std::all_of(base_.begin(), base_.begin() + static_cast<long>(std::min(i, base_.size())),
                        [&](std::uint32_t b) { return s[b] == b; }))
          gens.push_back(s);
      if (gens.empty()) break;
      if (i == base_.size()) {
        std::uint32_t moved = 0;
        while (gens.front()[moved] == moved) ++moved;
        base_.push_back(moved);
      }
      Level lv{base_[i], std::move(gens), {base_[i]}, {}};
      lv.transversal.assign(degree_, std::nullopt);
      lv.transversal[base_[i]] = perm::identity(degree_);
      for (std::size_t k = 0; k < lv.orbit.size(); ++k)
        for (const auto& s : lv.gens) {
          const auto y = s[lv.orbit[k]];
          if (!lv.transversal[y]) {
            lv.transversal[y] = perm::compose(s, *lv.transversal[lv.orbit[k]]);
            lv.orbit.push_back(y);
          }
        }
      levels_.push_back(std::move(lv));
    }
    base_.resize(levels_.size());
  }

  void build() {
    for (const auto& g : generators_)
      if (!perm::is_identity(g)) strong_.push_back(g);
    for (;;) {
      rebuild_levels();
      bool changed = false;
      for (std::size_t i = levels_.size(); i-- > 0 && !changed;) {
        const Level& lv = levels_[i];
        for (std::uint32_t beta : lv.orbit) {
          for (const auto& s : lv.gens) {
            const auto& u = *lv.transversal[beta];
            const auto& v = *lv.transversal[s[beta]];
            auto h = perm::compose(perm::inverse(v), perm::compose(s, u));
            auto [residue, level] = strip(std::move(h), i + 1);
            if (!perm::is_identity(residue)) {
              strong_.push_back(std::move(residue));
              changed = true;
              break;
            }
          }
          if (changed) break;
        }
      }
      if (!changed) return;
    }
  }

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> strong_;
  std::vector<std::uint32_t> base_;
  std::vector<Level> levels_;
};

}  // namespace minflow
