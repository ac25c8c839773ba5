#pragma once

// Type-based canonical domains. Each element is a maximal subset of the NNF
// subconcept closure that is consistent with the KB (finite rank); role edges
// connect x to y whenever every ∀R-filler of x belongs to y.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "typika/concept.hpp"
#include "typika/rational_closure.hpp"

namespace typika {

using ElementSet = std::vector<bool>;

struct Domain {
  /// NNF concepts the types range over, closed under subconcepts and NNF negation.
  std::vector<ConceptExpr> closure;
  std::vector<ConceptSet> types;
  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> role_edges;
  /// ABox individuals mapped to elements.
  std::map<std::string, std::size_t> individuals;

  std::size_t size() const noexcept { return types.size(); }

  /// Builds a domain over explicit element types (NNF concepts). Role edges use
  /// the ∀-filler rule.
  static Domain from_types(std::vector<ConceptSet> types);

  friend bool operator==(const Domain&, const Domain&) = default;
};

using CanonicalDomain = Domain;

/// Closure of `seed` under subconcepts of NNF forms and NNF negation.
std::vector<ConceptExpr> nnf_closure(const ConceptSet& seed);

/// Types over subconcept_closure(kb, query concepts). Throws InconsistentKb
/// when no type exists or the ABox cannot be mapped; throws Error when the
/// closure has more than `max_letters` independent letters.
Domain build_canonical_domain(const KnowledgeBase& kb, const std::optional<Axiom>& query = std::nullopt);
Domain build_canonical_domain(const RationalClosure& rc, const ConceptSet& extra, unsigned max_letters = 20);

ElementSet eval_concept(const Domain& domain, const ConceptExpr& c);

/// Maps individuals to elements consistent with their (non-typicality)
/// assertions and role assertions; first match in element order.
std::optional<std::map<std::string, std::size_t>> map_individuals(const Domain& domain, const KnowledgeBase& kb);

}  // namespace typika
