#include "typika/rational_closure.hpp"

#include <algorithm>

namespace typika {

std::vector<Axiom> RankedTBox::level(std::size_t i) const {
  std::vector<Axiom> out = strict_core;
  const auto& d = defeasible_levels.at(i);
  out.insert(out.end(), d.begin(), d.end());
  return out;
}

bool RankedTBox::level_contains(std::size_t i, const Axiom& a) const {
  if (!a.is_defeasible()) return std::find(strict_core.begin(), strict_core.end(), a) != strict_core.end();
  const auto& d = defeasible_levels.at(i);
  return std::find(d.begin(), d.end(), a) != d.end();
}

ConceptExpr materialization(std::span<const Axiom> defeasible) {
  std::vector<ConceptExpr> parts;
  for (const auto& a : defeasible) {
    if (a.is_defeasible()) parts.push_back(ConceptExpr::disjunction(ConceptExpr::negation(a.lhs), a.rhs));
  }
  return conjoin(parts);
}

namespace {

StrictTBox level_tbox(const StrictTBox& strict_core, std::span<const Axiom> level) {
  std::vector<Axiom> axioms = strict_core.axioms;
  const bool has_defeasible = std::any_of(level.begin(), level.end(), [](const Axiom& a) { return a.is_defeasible(); });
  if (has_defeasible) axioms.push_back(Axiom::strict(ConceptExpr::top(), materialization(level)));
  return StrictTBox(std::move(axioms));
}

}  // namespace

bool is_exceptional(const ConceptExpr& c, std::span<const Axiom> level, const StrictTBox& strict_core) {
  return !is_satisfiable(c, level_tbox(strict_core, level)).satisfiable;
}

RankedTBox compute_rank_sequence(const KnowledgeBase& kb) {
  RankedTBox ranked;
  ranked.strict_core = kb.strict();
  const StrictTBox core(kb.strict());

  std::vector<Axiom> current = kb.defeasible();
  ranked.defeasible_levels.push_back(current);
  while (!current.empty()) {
    std::vector<Axiom> next;
    for (const auto& a : current) {
      if (is_exceptional(a.lhs, current, core)) next.push_back(a);
    }
    if (next == current) break;
    ranked.defeasible_levels.push_back(next);
    current = std::move(next);
  }
  return ranked;
}

Rank concept_rank(const RankedTBox& ranked, const ConceptExpr& c) {
  const StrictTBox core(ranked.strict_core);
  for (std::size_t i = 0; i < ranked.level_count(); ++i) {
    if (!is_exceptional(c, ranked.defeasible_levels[i], core)) return Rank::finite(static_cast<unsigned>(i));
  }
  return Rank::infinite();
}

RationalClosure::RationalClosure(const KnowledgeBase& kb) : kb_(kb), ranked_(compute_rank_sequence(kb)) {
  const StrictTBox core(ranked_.strict_core);
  for (const auto& d : ranked_.defeasible_levels) level_tboxes_.push_back(level_tbox(core, d));
}

Rank RationalClosure::rank(const ConceptExpr& c) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(c); it != cache_.end()) return it->second;
  }
  Rank r = Rank::infinite();
  for (std::size_t i = 0; i < level_tboxes_.size(); ++i) {
    if (is_satisfiable(c, level_tboxes_[i]).satisfiable) {
      r = Rank::finite(static_cast<unsigned>(i));
      break;
    }
  }
  std::lock_guard lock(mutex_);
  cache_.emplace(c, r);
  return r;
}

bool RationalClosure::entails(const Axiom& query) const {
  const Rank counter = rank(ConceptExpr::conjunction(query.lhs, ConceptExpr::negation(query.rhs)));
  if (!query.is_defeasible()) return counter.is_infinite();
  const Rank antecedent = rank(query.lhs);
  return antecedent.is_infinite() || antecedent < counter;
}

bool RationalClosure::satisfiable(std::span<const ConceptExpr> concepts) const {
  return rank(conjoin(concepts)).is_finite();
}

bool in_rational_closure(const KnowledgeBase& kb, const Axiom& query) { return RationalClosure(kb).entails(query); }

bool satisfiable_wrt_kb(const KnowledgeBase& kb, std::span<const ConceptExpr> concepts) {
  return RationalClosure(kb).satisfiable(concepts);
}

}  // namespace typika
