#pragma once

// Brute-force lattice oracle for tests. Works from the raw order pairs only:
// down(x ^ y) = down(x) n down(y) and up(x v y) = up(x) n up(y), so meets and
// joins are found by set comparison, not by the library's tables.

#include "qrecon/lattice.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace testing {

struct LatticeOracle {
  std::vector<std::string> names;
  std::vector<std::set<std::size_t>> down, up;

  explicit LatticeOracle(const qrecon::lattice::LatticeSpec& spec) : names(spec.elements) {
    const std::size_t n = names.size();
    auto idx = [&](const std::string& s) {
      return static_cast<std::size_t>(std::find(names.begin(), names.end(), s) - names.begin());
    };
    std::vector<std::vector<std::size_t>> succ(n);
    for (const auto& [a, b] : spec.leq) succ[idx(a)].push_back(idx(b));
    down.resize(n);
    up.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::size_t> stack{s};
      while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        if (!up[s].insert(x).second) continue;
        for (std::size_t y : succ[x]) stack.push_back(y);
      }
      for (std::size_t x : up[s]) down[x].insert(s);
    }
  }

  bool leq(std::size_t x, std::size_t y) const { return up[x].count(y) > 0; }

  std::size_t meet(std::size_t x, std::size_t y) const {
    std::set<std::size_t> common;
    std::set_intersection(down[x].begin(), down[x].end(), down[y].begin(), down[y].end(),
                          std::inserter(common, common.end()));
    for (std::size_t z = 0; z < names.size(); ++z)
      if (down[z] == common) return z;
    return static_cast<std::size_t>(-1);
  }

  std::size_t join(std::size_t x, std::size_t y) const {
    std::set<std::size_t> common;
    std::set_intersection(up[x].begin(), up[x].end(), up[y].begin(), up[y].end(),
                          std::inserter(common, common.end()));
    for (std::size_t z = 0; z < names.size(); ++z)
      if (up[z] == common) return z;
    return static_cast<std::size_t>(-1);
  }

  // First (x, y, z) with x <= z violating the modular law.
  std::optional<std::vector<std::size_t>> first_modular_failure() const {
    const std::size_t n = names.size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          if (leq(x, z) && join(x, meet(y, z)) != meet(join(x, y), z)) return std::vector<std::size_t>{x, y, z};
    return std::nullopt;
  }

  bool distributive() const {
    const std::size_t n = names.size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          if (join(x, meet(y, z)) != meet(join(x, y), join(x, z))) return false;
    return true;
  }
};

}  // namespace testing
