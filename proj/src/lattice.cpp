#include "qrecon/lattice.hpp"

#include "qrecon/errors.hpp"

#include <algorithm>
#include <set>

namespace qrecon::lattice {

Element FiniteLattice::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error(ErrorCode::InvalidInput, "unknown lattice element '" + name + "'");
  return static_cast<Element>(it - names_.begin());
}

Element FiniteLattice::ortho(Element x) const {
  if (!ortho_) throw Error(ErrorCode::NoOrthoMap, "lattice has no orthocomplementation map");
  return (*ortho_)[x];
}

std::vector<Element> FiniteLattice::covers(Element x) const {
  std::vector<Element> out;
  for (Element y = 0; y < size(); ++y) {
    if (y == x || !leq(x, y)) continue;
    bool direct = true;
    for (Element z = 0; z < size() && direct; ++z) {
      if (z != x && z != y && leq(x, z) && leq(z, y)) direct = false;
    }
    if (direct) out.push_back(y);
  }
  return out;
}

FiniteLattice FiniteLattice::from_order(std::vector<std::string> names, std::vector<char> leq,
                                        std::optional<std::vector<Element>> ortho) {
  const std::size_t n = names.size();
  if (n == 0) throw Error(ErrorCode::NotALattice, "empty element set has no top or bottom");
  if (leq.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "order relation is not n x n");
  if (ortho && ortho->size() != n) throw Error(ErrorCode::DimensionMismatch, "ortho map has wrong length");

  auto at = [&](Element i, Element j) -> char& { return leq[i * n + j]; };
  for (Element i = 0; i < n; ++i) at(i, i) = 1;
  // Warshall closure.
  for (Element k = 0; k < n; ++k)
    for (Element i = 0; i < n; ++i)
      if (at(i, k))
        for (Element j = 0; j < n; ++j)
          if (at(k, j)) at(i, j) = 1;
  for (Element i = 0; i < n; ++i)
    for (Element j = i + 1; j < n; ++j)
      if (at(i, j) && at(j, i)) {
        throw Error(ErrorCode::NotAPoset, "cycle through '" + names[i] + "' and '" + names[j] + "'");
      }

  FiniteLattice l;
  l.names_ = std::move(names);
  l.leq_ = std::move(leq);
  l.meet_.assign(n * n, 0);
  l.join_.assign(n * n, 0);

  // Greatest element of `candidates` under the order (if below = false: least).
  auto extremal = [&](const std::vector<Element>& candidates, bool greatest) -> std::optional<Element> {
    for (Element g : candidates) {
      const bool ok = std::all_of(candidates.begin(), candidates.end(), [&](Element c) {
        return greatest ? l.leq(c, g) : l.leq(g, c);
      });
      if (ok) return g;
    }
    return std::nullopt;
  };

  for (Element x = 0; x < n; ++x) {
    for (Element y = x; y < n; ++y) {
      std::vector<Element> lower, upper;
      for (Element z = 0; z < n; ++z) {
        if (l.leq(z, x) && l.leq(z, y)) lower.push_back(z);
        if (l.leq(x, z) && l.leq(y, z)) upper.push_back(z);
      }
      const auto m = extremal(lower, true);
      const auto j = extremal(upper, false);
      if (!m || !j) {
        throw Error(ErrorCode::NotALattice, "'" + l.names_[x] + "' and '" + l.names_[y] + "' have no unique " +
                                                (m ? "supremum" : "infimum"));
      }
      l.meet_[x * n + y] = l.meet_[y * n + x] = *m;
      l.join_[x * n + y] = l.join_[y * n + x] = *j;
    }
  }

  l.bottom_ = 0;
  l.top_ = 0;
  for (Element x = 1; x < n; ++x) {
    l.bottom_ = l.meet(l.bottom_, x);
    l.top_ = l.join(l.top_, x);
  }
  l.ortho_ = std::move(ortho);
  return l;
}

FiniteLattice build_lattice(const LatticeSpec& spec) {
  const std::size_t n = spec.elements.size();
  std::map<std::string, Element> index;
  for (Element i = 0; i < n; ++i) {
    if (!index.emplace(spec.elements[i], i).second) {
      throw Error(ErrorCode::InvalidInput, "duplicate element name '" + spec.elements[i] + "'");
    }
  }
  auto lookup = [&](const std::string& s) {
    const auto it = index.find(s);
    if (it == index.end()) throw Error(ErrorCode::InvalidInput, "unknown lattice element '" + s + "'");
    return it->second;
  };

  std::vector<char> leq(n * n, 0);
  for (const auto& [a, b] : spec.leq) leq[lookup(a) * n + lookup(b)] = 1;

  std::optional<std::vector<Element>> ortho;
  if (!spec.ortho.empty()) {
    constexpr Element unset = static_cast<Element>(-1);
    std::vector<Element> map(n, unset);
    auto assign = [&](Element x, Element y) {
      if (map[x] != unset && map[x] != y) {
        throw Error(ErrorCode::InvalidInput, "conflicting ortho images for '" + spec.elements[x] + "'");
      }
      map[x] = y;
    };
    for (const auto& [a, b] : spec.ortho) assign(lookup(a), lookup(b));
    // Complete by involution where the document listed one direction only.
    for (const auto& [a, b] : spec.ortho) {
      if (map[lookup(b)] == unset) map[lookup(b)] = lookup(a);
    }
    ortho = std::move(map);
  }

  FiniteLattice l = FiniteLattice::from_order(spec.elements, std::move(leq), std::nullopt);
  if (ortho) {
    auto& map = *ortho;
    constexpr Element unset = static_cast<Element>(-1);
    if (map[l.bottom()] == unset && map[l.top()] == unset) {
      map[l.bottom()] = l.top();
      map[l.top()] = l.bottom();
    }
    for (Element x = 0; x < n; ++x) {
      if (map[x] == unset) {
        throw Error(ErrorCode::InvalidInput, "ortho map has no image for '" + spec.elements[x] + "'");
      }
    }
    std::vector<char> order(n * n);
    for (Element i = 0; i < n; ++i)
      for (Element j = 0; j < n; ++j) order[i * n + j] = l.leq(i, j) ? 1 : 0;
    return FiniteLattice::from_order(spec.elements, std::move(order), std::move(ortho));
  }
  return l;
}

OrthoCheck validate_ortho(const FiniteLattice& l) {
  if (!l.has_ortho()) throw Error(ErrorCode::NoOrthoMap, "validate_ortho needs an ortho map");
  const std::size_t n = l.size();
  OrthoCheck out;
  auto first_unary = [&](int clause, auto&& holds) {
    for (Element x = 0; x < n; ++x) {
      if (!holds(x)) {
        out.violations.push_back({clause, {x}});
        return;
      }
    }
  };
  first_unary(1, [&](Element x) { return l.ortho(l.ortho(x)) == x; });
  first_unary(3, [&](Element x) { return l.meet(x, l.ortho(x)) == l.bottom(); });
  first_unary(4, [&](Element x) { return l.join(x, l.ortho(x)) == l.top(); });
  [&] {
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        if (l.leq(x, y) != l.leq(l.ortho(y), l.ortho(x))) {
          out.violations.push_back({2, {x, y}});
          return;
        }
  }();
  out.ok = out.violations.empty();
  return out;
}

namespace {

bool orthocomplemented(const FiniteLattice& l) { return l.has_ortho() && validate_ortho(l).ok; }

}  // namespace

PropertyReport check_properties(const FiniteLattice& l) {
  const std::size_t n = l.size();
  PropertyReport r;

  // Atomic: every nonzero element dominates an atom.
  std::vector<Element> atoms = l.covers(l.bottom());
  r.is_atomic = true;
  for (Element x = 0; x < n && r.is_atomic; ++x) {
    if (x == l.bottom()) continue;
    const bool has_atom = std::any_of(atoms.begin(), atoms.end(), [&](Element a) { return l.leq(a, x); });
    if (!has_atom) {
      r.is_atomic = false;
      r.witnesses["atomic"] = {x};
    }
  }

  auto first_triple = [&](auto&& holds) -> std::optional<Witness> {
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        for (Element z = 0; z < n; ++z)
          if (!holds(x, y, z)) return Witness{x, y, z};
    return std::nullopt;
  };

  if (auto w = first_triple([&](Element x, Element y, Element z) {
        return l.join(x, l.meet(y, z)) == l.meet(l.join(x, y), l.join(x, z));
      })) {
    r.witnesses["distributive"] = *w;
  } else {
    r.is_distributive = true;
  }

  if (auto w = first_triple([&](Element x, Element y, Element z) {
        return !l.leq(x, z) || l.join(x, l.meet(y, z)) == l.meet(l.join(x, y), z);
      })) {
    r.witnesses["modular"] = *w;
  } else {
    r.is_modular = true;
  }

  r.is_orthocomplemented = orthocomplemented(l);
  if (l.has_ortho() && !r.is_orthocomplemented) {
    r.witnesses["orthocomplemented"] = validate_ortho(l).violations.front().witness;
  }

  if (r.is_orthocomplemented) {
    r.de_morgan_holds = l.ortho(l.top()) == l.bottom() && l.ortho(l.bottom()) == l.top();
    for (Element x = 0; x < n && r.de_morgan_holds; ++x) {
      for (Element y = 0; y < n; ++y) {
        const bool ok = l.ortho(l.join(x, y)) == l.meet(l.ortho(x), l.ortho(y)) &&
                        l.ortho(l.meet(x, y)) == l.join(l.ortho(x), l.ortho(y));
        if (!ok) {
          r.de_morgan_holds = false;
          r.witnesses["de_morgan"] = {x, y};
          break;
        }
      }
    }

    r.orthomodular_by_identity = true;
    r.orthomodular_by_criterion = true;
    for (Element x = 0; x < n; ++x) {
      for (Element z = 0; z < n; ++z) {
        if (!l.leq(x, z)) continue;
        const Element xz = l.meet(l.ortho(x), z);
        if (r.orthomodular_by_identity && l.join(x, xz) != z) {
          r.orthomodular_by_identity = false;
          r.witnesses["orthomodular"] = {x, z};
        }
        if (r.orthomodular_by_criterion && xz == l.bottom() && x != z) {
          r.orthomodular_by_criterion = false;
          r.witnesses["orthomodular_criterion"] = {x, z};
        }
      }
    }
    r.is_orthomodular = r.orthomodular_by_identity && r.orthomodular_by_criterion;
  }
  r.is_boolean = r.is_distributive && r.is_orthocomplemented;
  return r;
}

CenterReport center_and_irreducibility(const FiniteLattice& l) {
  if (!l.has_ortho()) throw Error(ErrorCode::NoOrthoMap, "center needs an ortho map");
  CenterReport out;
  for (Element c = 0; c < l.size(); ++c) {
    bool central = true;
    for (Element x = 0; x < l.size() && central; ++x) {
      central = l.join(l.meet(x, c), l.meet(x, l.ortho(c))) == x;
    }
    if (central) out.center.push_back(c);
  }
  // A one-element lattice has 0 = 1 and a trivial center.
  out.irreducible = out.center.size() <= 2;
  return out;
}

BooleanSubalgebras boolean_subalgebras(const FiniteLattice& l, std::size_t max_candidates) {
  if (!l.has_ortho()) throw Error(ErrorCode::NoOrthoMap, "Boolean subalgebras need an ortho map");
  if (!validate_ortho(l).ok) throw Error(ErrorCode::InvalidInput, "ortho map is not an orthocomplementation");

  std::vector<std::pair<Element, Element>> orbits;
  for (Element x = 0; x < l.size(); ++x) {
    if (x == l.bottom() || x == l.top()) continue;
    if (x < l.ortho(x)) orbits.emplace_back(x, l.ortho(x));
  }
  if (orbits.size() >= 63 || (std::size_t{1} << orbits.size()) > max_candidates) {
    throw Error(ErrorCode::EnumerationBudgetExceeded,
                std::to_string(orbits.size()) + " complement pairs give more candidate subsets than the budget " +
                    std::to_string(max_candidates));
  }

  std::vector<std::vector<Element>> algebras;
  const std::size_t candidates = std::size_t{1} << orbits.size();
  for (std::size_t mask = 0; mask < candidates; ++mask) {
    std::vector<char> in(l.size(), 0);
    in[l.bottom()] = in[l.top()] = 1;
    for (std::size_t k = 0; k < orbits.size(); ++k) {
      if (mask >> k & 1) in[orbits[k].first] = in[orbits[k].second] = 1;
    }
    std::vector<Element> members;
    for (Element x = 0; x < l.size(); ++x)
      if (in[x]) members.push_back(x);

    bool ok = true;
    for (Element x : members) {
      for (Element y : members) {
        if (!in[l.meet(x, y)] || !in[l.join(x, y)]) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    for (std::size_t i = 0; ok && i < members.size(); ++i)
      for (Element y : members)
        for (Element z : members) {
          const Element x = members[i];
          if (l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), l.join(x, z))) {
            ok = false;
            break;
          }
        }
    if (ok) algebras.push_back(std::move(members));
  }

  BooleanSubalgebras out;
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < algebras.size() && maximal; ++j) {
      if (i == j || algebras[j].size() <= algebras[i].size()) continue;
      maximal = !std::includes(algebras[j].begin(), algebras[j].end(), algebras[i].begin(), algebras[i].end());
    }
    if (maximal) out.blocks.push_back(algebras[i]);
  }
  out.proper_only = std::none_of(out.blocks.begin(), out.blocks.end(),
                                 [&](const auto& b) { return b.size() == l.size(); });
  return out;
}

namespace {

struct IsoSearch {
  const FiniteLattice& a;
  const FiniteLattice& b;
  bool use_ortho;
  std::vector<std::size_t> sig_a, sig_b;
  std::vector<Element> map;
  std::vector<char> used;

  static std::vector<std::size_t> signature(const FiniteLattice& l) {
    std::vector<std::size_t> sig(l.size());
    for (Element x = 0; x < l.size(); ++x) {
      std::size_t below = 0, above = 0;
      for (Element y = 0; y < l.size(); ++y) {
        below += l.leq(y, x);
        above += l.leq(x, y);
      }
      sig[x] = below * 64 + above;
    }
    return sig;
  }

  bool consistent(Element x, Element fx) const {
    for (Element y = 0; y < x; ++y) {
      if (a.leq(x, y) != b.leq(fx, map[y]) || a.leq(y, x) != b.leq(map[y], fx)) return false;
    }
    if (use_ortho) {
      const Element ox = a.ortho(x);
      if (ox < x && map[ox] != b.ortho(fx)) return false;
      if (ox == x && b.ortho(fx) != fx) return false;
    }
    return true;
  }

  bool extend(Element x) {
    if (x == a.size()) return true;
    for (Element fx = 0; fx < b.size(); ++fx) {
      if (used[fx] || sig_a[x] != sig_b[fx] || !consistent(x, fx)) continue;
      map[x] = fx;
      used[fx] = 1;
      if (extend(x + 1)) return true;
      used[fx] = 0;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Element>> lattice_isomorphic(const FiniteLattice& a, const FiniteLattice& b) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.size() > kIsomorphismSearchLimit) {
    throw Error(ErrorCode::SearchBudgetExceeded, "isomorphism search is limited to " +
                                                     std::to_string(kIsomorphismSearchLimit) + " elements");
  }
  IsoSearch s{a, b, a.has_ortho() && b.has_ortho(), IsoSearch::signature(a), IsoSearch::signature(b),
              std::vector<Element>(a.size()), std::vector<char>(b.size(), 0)};
  if (!s.extend(0)) return std::nullopt;
  return s.map;
}

FiniteLattice product(const FiniteLattice& a, const FiniteLattice& b) {
  const std::size_t n = a.size() * b.size();
  std::vector<std::string> names;
  names.reserve(n);
  for (Element x = 0; x < a.size(); ++x)
    for (Element y = 0; y < b.size(); ++y) names.push_back("(" + a.name(x) + "," + b.name(y) + ")");
  std::vector<char> leq(n * n, 0);
  for (Element i = 0; i < n; ++i)
    for (Element j = 0; j < n; ++j)
      leq[i * n + j] = a.leq(i / b.size(), j / b.size()) && b.leq(i % b.size(), j % b.size());
  std::optional<std::vector<Element>> ortho;
  if (a.has_ortho() && b.has_ortho()) {
    ortho.emplace(n);
    for (Element i = 0; i < n; ++i) (*ortho)[i] = a.ortho(i / b.size()) * b.size() + b.ortho(i % b.size());
  }
  return FiniteLattice::from_order(std::move(names), std::move(leq), std::move(ortho));
}

LatticeSpec spec_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("elements") || !j.contains("leq")) {
      throw Error(ErrorCode::InvalidInput, "lattice JSON needs \"elements\" and \"leq\"");
    }
    LatticeSpec spec;
    spec.elements = j.at("elements").get<std::vector<std::string>>();
    for (const auto& p : j.at("leq")) {
      if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::InvalidInput, "leq entries must be pairs");
      spec.leq.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    if (j.contains("ortho")) spec.ortho = j.at("ortho").get<std::map<std::string, std::string>>();
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("lattice JSON: ") + e.what());
  }
}

json to_json(const FiniteLattice& l) {
  json out;
  out["elements"] = l.names();
  json pairs = json::array();
  for (Element x = 0; x < l.size(); ++x)
    for (Element y : l.covers(x)) pairs.push_back(json::array({l.name(x), l.name(y)}));
  out["leq"] = std::move(pairs);
  if (l.has_ortho()) {
    json ortho = json::object();
    for (Element x = 0; x < l.size(); ++x) ortho[l.name(x)] = l.name(l.ortho(x));
    out["ortho"] = std::move(ortho);
  }
  return out;
}

json report_to_json(const FiniteLattice& l, const PropertyReport& r) {
  json w = json::object();
  for (const auto& [prop, tuple] : r.witnesses) {
    json names = json::array();
    for (Element e : tuple) names.push_back(l.name(e));
    w[prop] = std::move(names);
  }
  return json{{"is_lattice", r.is_lattice},
              {"is_complete", r.is_complete},
              {"is_atomic", r.is_atomic},
              {"is_distributive", r.is_distributive},
              {"is_modular", r.is_modular},
              {"is_orthocomplemented", r.is_orthocomplemented},
              {"de_morgan_holds", r.de_morgan_holds},
              {"is_orthomodular", r.is_orthomodular},
              {"orthomodular_by_identity", r.orthomodular_by_identity},
              {"orthomodular_by_criterion", r.orthomodular_by_criterion},
              {"is_boolean", r.is_boolean},
              {"witnesses", std::move(w)}};
}

}  // namespace qrecon::lattice
