#pragma once

// Enriched models: one rank function per aspect plus a global rank function
// over a fixed domain and interpretation. Ranks encode the preferences
// (x < y iff k(x) < k(y)).

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "typika/concept.hpp"
#include "typika/domain.hpp"

namespace typika {

using RankFunction = std::vector<unsigned>;

struct RankAssignment {
  /// Aligned with the model's AspectSet.
  std::vector<RankFunction> per_aspect;
  RankFunction global;

  friend bool operator==(const RankAssignment&, const RankAssignment&) = default;
  friend auto operator<=>(const RankAssignment&, const RankAssignment&) = default;
};

struct EnrichedModel {
  std::shared_ptr<const Domain> domain;
  AspectSet aspects;
  RankAssignment ranks;

  friend bool operator==(const EnrichedModel& a, const EnrichedModel& b) {
    return *a.domain == *b.domain && a.aspects == b.aspects && a.ranks == b.ranks;
  }
};

struct SinglePrefModel {
  std::shared_ptr<const Domain> domain;
  RankFunction global;

  friend bool operator==(const SinglePrefModel& a, const SinglePrefModel& b) {
    return *a.domain == *b.domain && a.global == b.global;
  }
};

enum class CouplingMode { If, Iff };

/// Attains 0 and has no gaps (every value below the maximum is used).
bool is_rank_function(const RankFunction& k);

/// Renumbers values densely, keeping the order.
RankFunction compress(const RankFunction& k);

/// min{k(x) : x ∈ ext}, or nullopt for an empty extension.
std::optional<unsigned> min_rank(const RankFunction& k, const ElementSet& ext);

/// Elements of `ext` with minimal rank.
ElementSet minimal_elements(const RankFunction& k, const ElementSet& ext);

/// Whether `query` holds in the domain ordered by `global`.
bool holds_in(const Domain& domain, const RankFunction& global, const Axiom& query);

bool check_coupling(const EnrichedModel& m, const KnowledgeBase& kb, CouplingMode mode = CouplingMode::If);

/// Strict axioms, both minimality conditions of each defeasible axiom, and
/// non-typical ABox assertions of mapped individuals.
bool satisfies_kb(const EnrichedModel& m, const KnowledgeBase& kb);
bool satisfies_kb(const SinglePrefModel& m, const KnowledgeBase& kb);

/// m1's aspect ranks are pointwise ≤ m2's with one strict drop.
bool aspect_preferred(const EnrichedModel& m1, const EnrichedModel& m2);

/// m1 is in `aspect_minimal_pool` and its global ranks are pointwise ≤ m2's
/// with one strict drop.
bool globally_preferred(const EnrichedModel& m1, const EnrichedModel& m2,
                        const std::vector<EnrichedModel>& aspect_minimal_pool);

/// Least rank function under which min(C) ⊆ A for every (C, A) in `constraints`
/// (extensions of C and of C ⊓ ¬A). Throws Error when none exists.
RankFunction least_rank_function(std::size_t n, const std::vector<std::pair<ElementSet, ElementSet>>& constraints);

enum class Regime { SinglePreference, Enriched };

/// Models over one domain, searched exactly by guessing concept ranks.
class EnrichedSemantics {
 public:
  EnrichedSemantics(KnowledgeBase kb, std::shared_ptr<const Domain> domain, unsigned rank_bound);

  const KnowledgeBase& kb() const noexcept { return kb_; }
  const std::shared_ptr<const Domain>& domain() const noexcept { return domain_; }
  const AspectSet& aspects() const noexcept { return aspects_; }
  unsigned rank_bound() const noexcept { return bound_; }

  /// Least aspect ranks; every aspect-minimal model of K has exactly these.
  const std::vector<RankFunction>& least_aspect_ranks() const;

  /// Aspect-minimal models with no globally preferred competitor, in
  /// lexicographic order. Throws SearchOverflow if one needs ranks above the
  /// bound.
  const std::vector<EnrichedModel>& minimal_models() const;

  /// First minimal model in which `query` fails.
  std::optional<EnrichedModel> countermodel(const Axiom& query) const;
  bool entails(const Axiom& query) const { return !countermodel(query); }

  /// Global ranks of some model (in `regime`, within the bound) where `query`
  /// fails.
  std::optional<RankFunction> any_countermodel(const Axiom& query, Regime regime) const;

  /// The single-preference minimal model (it is unique).
  SinglePrefModel least_single_pref_model() const;
  bool single_pref_entails(const Axiom& query) const;

  /// Builds the enriched model with all aspect ranks equal to `global`.
  EnrichedModel uniform_model(const RankFunction& global) const;

 private:
  std::optional<RankFunction> least_solution(const std::vector<unsigned>& kappa, const RankFunction& base,
                                             const std::vector<std::pair<std::size_t, std::size_t>>& fixed,
                                             bool coupled) const;
  struct Solution {
    RankFunction global;
    unsigned level;  // rank of the query antecedent
  };
  const std::vector<Solution>& solutions(const std::optional<ConceptExpr>& lhs, Regime regime) const;

  KnowledgeBase kb_;
  std::shared_ptr<const Domain> domain_;
  AspectSet aspects_;
  unsigned bound_;

  std::vector<ElementSet> antecedents_;   // distinct nonempty antecedent extensions
  std::vector<std::size_t> axiom_antecedent_;  // per defeasible axiom; npos if empty
  std::vector<ElementSet> violations_;    // per defeasible axiom: C ⊓ ¬A
  std::vector<std::vector<std::size_t>> violated_;  // per element

  mutable std::optional<std::vector<RankFunction>> least_aspects_;
  mutable std::optional<std::vector<EnrichedModel>> minimal_;
  mutable std::map<std::tuple<Regime, bool, ElementSet>, std::vector<Solution>> solutions_;
  mutable std::recursive_mutex mutex_;
};

unsigned default_rank_bound(const KnowledgeBase& kb);

/// Brute-force enumeration of every model within the bound. `budget` caps the
/// number of rank-assignment combinations tried; exceeding it throws
/// SearchOverflow.
struct ExhaustiveResult {
  std::vector<EnrichedModel> models;
  std::vector<EnrichedModel> aspect_minimal;
  /// Models with no aspect-minimal competitor globally preferred to them.
  std::vector<EnrichedModel> literal_minimal;
  /// literal_minimal ∩ aspect_minimal.
  std::vector<EnrichedModel> minimal;
};

ExhaustiveResult enumerate_enriched_models(const KnowledgeBase& kb, std::shared_ptr<const Domain> domain,
                                           unsigned rank_bound, CouplingMode mode = CouplingMode::If,
                                           std::size_t budget = 5'000'000);

std::vector<SinglePrefModel> enumerate_single_pref_models(const KnowledgeBase& kb, std::shared_ptr<const Domain> domain,
                                                          unsigned rank_bound);

/// All rank functions over n elements with values ≤ bound.
std::vector<RankFunction> all_rank_functions(std::size_t n, unsigned bound);

}  // namespace typika
