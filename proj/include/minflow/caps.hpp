#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "minflow/error.hpp"

namespace minflow {

/// Size limits for the exhaustive algorithms. Defaults keep the full
/// acceptance sweep well under a minute on one core.
struct Caps {
  std::size_t symmetric_degree = 6;     // symmetric(n), order 720
  std::size_t subgroup_order = 256;     // subgroups() / normal_subgroups()
  std::size_t automorphism_order = 64;  // automorphism_group() brute force
  std::size_t table_order = 10000;      // dense Cayley tables
  std::size_t iso_points = 512;         // find_isomorphism()
  std::size_t perm_degree = 4096;       // leaves of a permutation-represented tower level
  std::size_t sweep_order = 24;         // catalog groups visited by the sweep

  /// Applies one `key=value` override; unknown keys are a ParseError.
  void set(const std::string& key, std::size_t value) {
    if (key == "symmetric_degree") symmetric_degree = value;
    else if (key == "subgroup_order") subgroup_order = value;
    else if (key == "automorphism_order") automorphism_order = value;
    else if (key == "table_order") table_order = value;
    else if (key == "iso_points") iso_points = value;
    else if (key == "perm_degree") perm_degree = value;
    else if (key == "sweep_order") sweep_order = value;
    else throw Error(ErrorKind::ParseError, "unknown cap '" + key + "'");
  }
};

inline const Caps& default_caps() {
  static const Caps caps{};
  return caps;
}

}  // namespace minflow
