#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <vector>

#include "typika/concept.hpp"
#include "typika/enriched.hpp"
#include "typika/rational_closure.hpp"

namespace typika {

enum class Semantics { RationalClosure, SinglePref, Enriched };

std::string_view to_string(Semantics s);
std::optional<Semantics> parse_semantics(std::string_view name);

struct Verdict {
  Semantics semantics = Semantics::RationalClosure;
  bool entailed = false;
  /// Countermodel when not entailed; a minimal model when one was requested.
  /// Single-preference witnesses carry no aspect ranks.
  std::optional<EnrichedModel> witness;
  std::optional<double> timing_ms;
};

/// Answers queries for one KB under every semantics, sharing the ranking and
/// the per-vocabulary domains between queries.
class Reasoner {
 public:
  /// Throws InconsistentKb when ⊤ has no finite rank.
  Reasoner(KnowledgeBase kb, unsigned rank_bound);

  const KnowledgeBase& kb() const noexcept { return rc_.kb(); }
  const RationalClosure& rational_closure() const noexcept { return rc_; }
  unsigned rank_bound() const noexcept { return bound_; }

  /// Semantics over the canonical domain for the query's vocabulary.
  std::shared_ptr<const EnrichedSemantics> semantics_for(const std::optional<Axiom>& query) const;

  Verdict query(const Axiom& query, Semantics semantics, bool want_model = false) const;

 private:
  RationalClosure rc_;
  unsigned bound_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<ConceptExpr>, std::shared_ptr<const EnrichedSemantics>> cache_;
};

std::vector<EnrichedModel> minimal_canonical_models(const KnowledgeBase& kb, const Axiom& query, unsigned rank_bound);
Verdict enriched_entails(const KnowledgeBase& kb, const Axiom& query, unsigned rank_bound);
Verdict single_pref_entails(const KnowledgeBase& kb, const Axiom& query, unsigned rank_bound);

}  // namespace typika
