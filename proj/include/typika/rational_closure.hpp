#pragma once

// Rational closure of a TBox via the exceptionality ranking E0 ⊇ E1 ⊇ ...
//
// Exceptionality is decided by materialization: C is exceptional for a level
// iff the strict core together with ⊤ ⊑ ⨅(¬Ci ⊔ Di), over the level's
// defeasible axioms T(Ci) ⊑ Di, classically entails C ⊑ ⊥.

#include <compare>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "typika/concept.hpp"
#include "typika/tableau.hpp"

namespace typika {

/// A natural number or infinity. Infinity is above every natural.
class Rank {
 public:
  static constexpr Rank finite(unsigned v) noexcept { return Rank(v, false); }
  static constexpr Rank infinite() noexcept { return Rank(0, true); }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }
  /// Only meaningful for finite ranks.
  constexpr unsigned value() const noexcept { return value_; }

  friend constexpr bool operator==(const Rank&, const Rank&) = default;
  friend constexpr std::strong_ordering operator<=>(const Rank& a, const Rank& b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

 private:
  constexpr Rank(unsigned v, bool inf) noexcept : value_(v), infinite_(inf) {}
  unsigned value_;
  bool infinite_;
};

/// The ranking sequence. Level i is strict_core ∪ defeasible_levels[i].
struct RankedTBox {
  std::vector<Axiom> strict_core;
  std::vector<std::vector<Axiom>> defeasible_levels;

  std::size_t fixpoint_index() const noexcept { return defeasible_levels.size() - 1; }
  std::size_t level_count() const noexcept { return defeasible_levels.size(); }
  /// Full axiom set E_i.
  std::vector<Axiom> level(std::size_t i) const;
  bool level_contains(std::size_t i, const Axiom& a) const;
};

/// ⨅ (¬Ci ⊔ Di) over T(Ci) ⊑ Di; Top for none. Strict axioms are ignored.
ConceptExpr materialization(std::span<const Axiom> defeasible);

/// Whether `c` is exceptional for the axiom set `level`.
bool is_exceptional(const ConceptExpr& c, std::span<const Axiom> level, const StrictTBox& strict_core);

RankedTBox compute_rank_sequence(const KnowledgeBase& kb);

Rank concept_rank(const RankedTBox& ranked, const ConceptExpr& c);

/// Ranking plus a per-concept rank cache. Thread-safe.
class RationalClosure {
 public:
  explicit RationalClosure(const KnowledgeBase& kb);

  const KnowledgeBase& kb() const noexcept { return kb_; }
  const RankedTBox& ranked() const noexcept { return ranked_; }

  Rank rank(const ConceptExpr& c) const;
  /// T(C) ⊑ D: rank(C) < rank(C ⊓ ¬D) or rank(C) = ∞. C ⊑ D: rank(C ⊓ ¬D) = ∞.
  bool entails(const Axiom& query) const;
  /// The conjunction has finite rank.
  bool satisfiable(std::span<const ConceptExpr> concepts) const;

 private:
  KnowledgeBase kb_;
  RankedTBox ranked_;
  std::vector<StrictTBox> level_tboxes_;
  mutable std::mutex mutex_;
  mutable std::map<ConceptExpr, Rank> cache_;
};

bool in_rational_closure(const KnowledgeBase& kb, const Axiom& query);
bool satisfiable_wrt_kb(const KnowledgeBase& kb, std::span<const ConceptExpr> concepts);

}  // namespace typika
