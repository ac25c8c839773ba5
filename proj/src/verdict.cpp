#include "typika/verdict.hpp"

#include "typika/errors.hpp"

namespace typika {

std::string_view to_string(Semantics s) {
  switch (s) {
    case Semantics::RationalClosure: return "rc";
    case Semantics::SinglePref: return "single-pref";
    case Semantics::Enriched: return "enriched";
  }
  return "?";
}

std::optional<Semantics> parse_semantics(std::string_view name) {
  if (name == "rc") return Semantics::RationalClosure;
  if (name == "single-pref") return Semantics::SinglePref;
  if (name == "enriched") return Semantics::Enriched;
  return std::nullopt;
}

Reasoner::Reasoner(KnowledgeBase kb, unsigned rank_bound) : rc_(kb), bound_(rank_bound) {
  if (rc_.rank(ConceptExpr::top()).is_infinite()) throw InconsistentKb("knowledge base is inconsistent");
}

std::shared_ptr<const EnrichedSemantics> Reasoner::semantics_for(const std::optional<Axiom>& query) const {
  ConceptSet extra;
  if (query) {
    extra.insert(query->lhs);
    extra.insert(query->rhs);
  }
  auto key = nnf_closure(subconcept_closure(kb(), extra));
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto domain = std::make_shared<const Domain>(build_canonical_domain(rc_, extra));
  auto sem = std::make_shared<const EnrichedSemantics>(kb(), std::move(domain), bound_);
  std::lock_guard lock(mutex_);
  return cache_.emplace(std::move(key), std::move(sem)).first->second;
}

Verdict Reasoner::query(const Axiom& query, Semantics semantics, bool want_model) const {
  Verdict v;
  v.semantics = semantics;
  auto single_pref_witness = [&](const EnrichedSemantics& sem) {
    auto m = sem.least_single_pref_model();
    return EnrichedModel{m.domain, AspectSet{}, RankAssignment{{}, m.global}};
  };
  switch (semantics) {
    case Semantics::RationalClosure: {
      v.entailed = rc_.entails(query);
      if (want_model) v.witness = single_pref_witness(*semantics_for(query));
      break;
    }
    case Semantics::SinglePref: {
      auto sem = semantics_for(query);
      v.entailed = sem->single_pref_entails(query);
      if (want_model || !v.entailed) v.witness = single_pref_witness(*sem);
      break;
    }
    case Semantics::Enriched: {
      auto sem = semantics_for(query);
      auto counter = sem->countermodel(query);
      v.entailed = !counter;
      if (counter) v.witness = std::move(counter);
      if (!counter && want_model && !sem->minimal_models().empty()) v.witness = sem->minimal_models().front();
      break;
    }
  }
  return v;
}

std::vector<EnrichedModel> minimal_canonical_models(const KnowledgeBase& kb, const Axiom& query, unsigned rank_bound) {
  return Reasoner(kb, rank_bound).semantics_for(query)->minimal_models();
}

Verdict enriched_entails(const KnowledgeBase& kb, const Axiom& query, unsigned rank_bound) {
  return Reasoner(kb, rank_bound).query(query, Semantics::Enriched, false);
}

Verdict single_pref_entails(const KnowledgeBase& kb, const Axiom& query, unsigned rank_bound) {
  return Reasoner(kb, rank_bound).query(query, Semantics::SinglePref, false);
}

}  // namespace typika
