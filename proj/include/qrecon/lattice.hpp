#pragma once

// Finite lattices given by an explicit order, with exhaustive decision
// procedures for the classical lattice properties. Finite lattices are
// automatically complete, so completeness is recorded rather than checked.

#include "qrecon/json_io.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qrecon::lattice {

using Element = std::size_t;
// Element indices of a counterexample, lexicographically first in index order.
using Witness = std::vector<Element>;

struct LatticeSpec {
  std::vector<std::string> elements;
  // Pairs (x, y) meaning x <= y; covering pairs are enough.
  std::vector<std::pair<std::string, std::string>> leq;
  // May list each pair once; completed by involution (and 0 <-> 1).
  std::map<std::string, std::string> ortho;
};

class FiniteLattice {
 public:
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Element x) const { return names_.at(x); }
  // Throws InvalidInput for unknown names.
  Element index_of(const std::string& name) const;

  bool leq(Element x, Element y) const { return leq_[x * size() + y] != 0; }
  Element meet(Element x, Element y) const { return meet_[x * size() + y]; }
  Element join(Element x, Element y) const { return join_[x * size() + y]; }
  Element bottom() const noexcept { return bottom_; }
  Element top() const noexcept { return top_; }

  bool has_ortho() const noexcept { return ortho_.has_value(); }
  // Throws NoOrthoMap when absent.
  Element ortho(Element x) const;
  const std::optional<std::vector<Element>>& ortho_map() const noexcept { return ortho_; }

  // Elements y with x < y and nothing strictly between.
  std::vector<Element> covers(Element x) const;

  // Builds from a reflexive order relation (row-major n x n). Computes the
  // transitive closure and the meet/join tables. Throws NotAPoset / NotALattice.
  static FiniteLattice from_order(std::vector<std::string> names, std::vector<char> leq,
                                  std::optional<std::vector<Element>> ortho);

 private:
  std::vector<std::string> names_;
  std::vector<char> leq_;
  std::vector<Element> meet_;
  std::vector<Element> join_;
  Element bottom_ = 0;
  Element top_ = 0;
  std::optional<std::vector<Element>> ortho_;
};

FiniteLattice build_lattice(const LatticeSpec& spec);

struct PropertyReport {
  bool is_lattice = true;
  bool is_complete = true;  // implied at finite size
  bool is_atomic = false;
  bool is_distributive = false;
  bool is_modular = false;
  bool is_orthocomplemented = false;
  bool de_morgan_holds = false;
  bool is_orthomodular = false;
  // The two orthomodularity procedures, reported separately so that their
  // agreement can be audited: x <= z => x v (x' ^ z) = z, and
  // x <= z, x' ^ z = 0 => x = z.
  bool orthomodular_by_identity = false;
  bool orthomodular_by_criterion = false;
  bool is_boolean = false;
  // Property name -> first failing tuple. Properties that cannot be evaluated
  // (no ortho map) have no witness.
  std::map<std::string, Witness> witnesses;
};

PropertyReport check_properties(const FiniteLattice& l);

struct OrthoViolation {
  int clause = 0;  // 1..4: x'' = x, x <= y <=> y' <= x', x ^ x' = 0, x v x' = 1
  Witness witness;
};

struct OrthoCheck {
  bool ok = true;
  // Element-wise clauses (1), (3), (4) first, then the pairwise clause (2).
  std::vector<OrthoViolation> violations;
};

OrthoCheck validate_ortho(const FiniteLattice& l);

struct CenterReport {
  std::vector<Element> center;
  bool irreducible = false;
};

CenterReport center_and_irreducibility(const FiniteLattice& l);

struct BooleanSubalgebras {
  // Maximal Boolean subalgebras (blocks), each sorted ascending.
  std::vector<std::vector<Element>> blocks;
  // True iff no block is the whole lattice.
  bool proper_only = false;
};

// Enumerates ortho-closed candidate subsets; throws EnumerationBudgetExceeded
// when their number exceeds `max_candidates`.
BooleanSubalgebras boolean_subalgebras(const FiniteLattice& l, std::size_t max_candidates);

inline constexpr std::size_t kIsomorphismSearchLimit = 12;

// Order (and, when both carry one, ortho) preserving bijection a -> b, if any.
// Throws SearchBudgetExceeded above kIsomorphismSearchLimit elements.
std::optional<std::vector<Element>> lattice_isomorphic(const FiniteLattice& a, const FiniteLattice& b);

// Cartesian product with componentwise order; names are "(x,y)".
FiniteLattice product(const FiniteLattice& a, const FiniteLattice& b);

LatticeSpec spec_from_json(const json& j);
// Writes covering pairs and the full ortho map.
json to_json(const FiniteLattice& l);
json report_to_json(const FiniteLattice& l, const PropertyReport& r);

}  // namespace qrecon::lattice
