#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "minflow/groups.hpp"
#include "minflow/semidirect.hpp"
#include "minflow/wreath.hpp"

namespace minflow {

struct CatalogEntry {
  std::string name;
  std::size_t order;
  std::function<GroupPtr()> make;
};

/// Split extensions named "H|xK" in the catalog, with their structure.
inline std::optional<SemidirectProduct> builtin_semidirect(const std::string& name) {
  auto inv = [](std::size_t nh, std::size_t nk, const std::string& label) {
    GroupPtr k = cyclic(nk);
    return semidirect_product(cyclic(nh), k, cyclic_action(nh, inversion(*k)), label);
  };
  if (name == "C2|xC3") return inv(2, 3, name);
  if (name == "C2|xC4") return inv(2, 4, name);
  if (name == "C4|xC4") return inv(4, 4, name);
  return std::nullopt;
}

/// The fixed builtin list, in listing order.
inline const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    for (std::size_t n = 1; n <= 16; ++n)
      e.push_back({"C" + std::to_string(n), n, [n] { return cyclic(n); }});
    for (std::size_t n = 3; n <= 8; ++n)
      e.push_back({"D" + std::to_string(n), 2 * n, [n] { return dihedral(n); }});
    e.push_back({"S3", 6, [] { return symmetric(3); }});
    e.push_back({"S4", 24, [] { return symmetric(4); }});
    e.push_back({"Q8", 8, quaternion8});
    e.push_back({"V4", 4, klein_four});
    e.push_back({"C2xC4", 8, [] { return direct_product(*cyclic(2), *cyclic(4)); }});
    e.push_back({"S3xC2", 12, [] { return direct_product(*symmetric(3), *cyclic(2)); }});
    for (const char* s : {"C2|xC3", "C2|xC4", "C4|xC4"}) {
      const std::string name = s;
      e.push_back({name, builtin_semidirect(name)->group->order(),
                   [name] { return builtin_semidirect(name)->group; }});
    }
    e.push_back({"W2_2", 8, [] { return iterated_wreath(2, 2).group; }});
    e.push_back({"W2_3", 128, [] { return iterated_wreath(2, 3).group; }});
    return e;
  }();
  return entries;
}

/// Builtin by name, or null.
inline GroupPtr find_builtin(const std::string& name) {
  for (const auto& e : builtin_catalog())
    if (e.name == name) return e.make();
  return nullptr;
}

}  // namespace minflow
