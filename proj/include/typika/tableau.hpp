#pragma once

// Classical ALC reasoning: concept satisfiability with respect to a T-free
// TBox, by a tableau with TBox internalization and subset blocking.

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "typika/concept.hpp"

namespace typika {

struct StrictTBox {
  std::vector<Axiom> axioms;  // all Axiom::Kind::Strict

  StrictTBox() = default;
  /// Throws std::invalid_argument on a defeasible axiom.
  explicit StrictTBox(std::vector<Axiom> axioms);
};

/// A finite ALC interpretation. Element 0..size()-1; `root` is the element
/// realizing the tested concept.
struct FiniteModel {
  std::vector<std::set<std::string>> atoms;
  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> edges;
  std::size_t root = 0;

  std::size_t size() const noexcept { return atoms.size(); }
  /// Extension of an ALC concept (no T) over the model.
  std::vector<bool> extension(const ConceptExpr& c) const;
  bool holds(const ConceptExpr& c, std::size_t element) const { return extension(c)[element]; }
  /// Every axiom of the TBox holds at every element.
  bool satisfies(const StrictTBox& tbox) const;
};

struct SatResult {
  bool satisfiable = false;
  std::optional<FiniteModel> witness;
};

SatResult is_satisfiable(const ConceptExpr& c, const StrictTBox& tbox, bool want_witness = false);

/// tbox |= lhs ⊑ rhs.
bool entails_strict(const StrictTBox& tbox, const ConceptExpr& lhs, const ConceptExpr& rhs);

/// The conjunction of `concepts` is satisfiable w.r.t. `tbox`.
bool is_consistent_set(std::span<const ConceptExpr> concepts, const StrictTBox& tbox);

}  // namespace typika
