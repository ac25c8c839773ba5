#include "typika/enriched.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "typika/errors.hpp"

namespace typika {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

bool subset(const ElementSet& a, const ElementSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

ElementSet and_not(const ElementSet& a, const ElementSet& b) {
  ElementSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && !b[i];
  return out;
}

bool pointwise_below(const RankFunction& a, const RankFunction& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

// Odometer over [0..bound]^n. Returns false after the last vector.
bool advance(std::vector<unsigned>& v, unsigned bound) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (v[i] < bound) {
      ++v[i];
      return true;
    }
    v[i] = 0;
  }
  return false;
}

bool strict_axioms_hold(const Domain& d, const KnowledgeBase& kb) {
  for (const auto& a : kb.strict()) {
    if (!subset(eval_concept(d, a.lhs), eval_concept(d, a.rhs))) return false;
  }
  return true;
}

bool abox_holds(const Domain& d, const KnowledgeBase& kb) {
  for (const auto& a : kb.abox()) {
    const auto* ca = std::get_if<ConceptAssertion>(&a);
    if (!ca || ca->typical) continue;
    auto it = d.individuals.find(ca->individual);
    if (it == d.individuals.end() || !eval_concept(d, ca->expr)[it->second]) return false;
  }
  return true;
}

bool typicality_holds(const Domain& d, const RankFunction& k, const Axiom& a) {
  return subset(minimal_elements(k, eval_concept(d, a.lhs)), eval_concept(d, a.rhs));
}

void check_same_structure(const EnrichedModel& m1, const EnrichedModel& m2) {
  if (!m1.domain || !m2.domain || !(*m1.domain == *m2.domain) || !(m1.aspects == m2.aspects) ||
      m1.ranks.per_aspect.size() != m2.ranks.per_aspect.size())
    throw DomainMismatch("models do not share domain, interpretation and aspects");
}

}  // namespace

bool is_rank_function(const RankFunction& k) {
  if (k.empty()) return true;
  const unsigned top = *std::max_element(k.begin(), k.end());
  std::vector<bool> used(top + 1, false);
  for (unsigned v : k) used[v] = true;
  return std::all_of(used.begin(), used.end(), [](bool b) { return b; });
}

RankFunction compress(const RankFunction& k) {
  std::set<unsigned> values(k.begin(), k.end());
  RankFunction out;
  out.reserve(k.size());
  for (unsigned v : k) out.push_back(static_cast<unsigned>(std::distance(values.begin(), values.find(v))));
  return out;
}

std::optional<unsigned> min_rank(const RankFunction& k, const ElementSet& ext) {
  std::optional<unsigned> best;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    if (ext[i] && (!best || k[i] < *best)) best = k[i];
  }
  return best;
}

ElementSet minimal_elements(const RankFunction& k, const ElementSet& ext) {
  ElementSet out(ext.size(), false);
  auto m = min_rank(k, ext);
  if (!m) return out;
  for (std::size_t i = 0; i < ext.size(); ++i) out[i] = ext[i] && k[i] == *m;
  return out;
}

bool holds_in(const Domain& domain, const RankFunction& global, const Axiom& query) {
  if (query.is_defeasible()) return typicality_holds(domain, global, query);
  return subset(eval_concept(domain, query.lhs), eval_concept(domain, query.rhs));
}

bool check_coupling(const EnrichedModel& m, const KnowledgeBase& kb, CouplingMode mode) {
  const Domain& d = *m.domain;
  const std::size_t n = d.size();
  const auto& g = m.ranks.global;
  const auto& defs = kb.defeasible();

  std::vector<std::optional<unsigned>> concept_rank;
  std::vector<ElementSet> violation;
  for (const auto& a : defs) {
    auto ext = eval_concept(d, a.lhs);
    concept_rank.push_back(min_rank(g, ext));
    violation.push_back(and_not(ext, eval_concept(d, a.rhs)));
  }

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      bool some_below = false;
      bool some_above = false;
      for (const auto& k : m.ranks.per_aspect) {
        if (k[x] < k[y]) some_below = true;
        if (k[y] < k[x]) some_above = true;
      }
      const bool a = some_below && !some_above;

      bool b = false;
      for (std::size_t i = 0; i < defs.size() && !b; ++i) b = violation[i][y];
      for (std::size_t j = 0; j < defs.size() && b; ++j) {
        if (!violation[j][x]) continue;
        bool found = false;
        for (std::size_t k = 0; k < defs.size() && !found; ++k) {
          found = violation[k][y] && *concept_rank[j] < *concept_rank[k];
        }
        b = found;
      }

      const bool below = g[x] < g[y];
      if (mode == CouplingMode::If && (a || b) && !below) return false;
      if (mode == CouplingMode::Iff && (a || b) != below) return false;
    }
  }
  return true;
}

bool satisfies_kb(const EnrichedModel& m, const KnowledgeBase& kb) {
  const Domain& d = *m.domain;
  if (m.ranks.global.size() != d.size() || m.ranks.per_aspect.size() != m.aspects.size()) return false;
  if (!strict_axioms_hold(d, kb) || !abox_holds(d, kb)) return false;
  for (const auto& a : kb.defeasible()) {
    if (!typicality_holds(d, m.ranks.global, a)) return false;
    const std::size_t i = m.aspects.index_of(a.rhs);
    if (i == m.aspects.size() || !typicality_holds(d, m.ranks.per_aspect[i], a)) return false;
  }
  return true;
}

bool satisfies_kb(const SinglePrefModel& m, const KnowledgeBase& kb) {
  const Domain& d = *m.domain;
  if (m.global.size() != d.size()) return false;
  if (!strict_axioms_hold(d, kb) || !abox_holds(d, kb)) return false;
  return std::all_of(kb.defeasible().begin(), kb.defeasible().end(),
                     [&](const Axiom& a) { return typicality_holds(d, m.global, a); });
}

bool aspect_preferred(const EnrichedModel& m1, const EnrichedModel& m2) {
  check_same_structure(m1, m2);
  bool strict = false;
  for (std::size_t a = 0; a < m1.ranks.per_aspect.size(); ++a) {
    const auto& k1 = m1.ranks.per_aspect[a];
    const auto& k2 = m2.ranks.per_aspect[a];
    for (std::size_t x = 0; x < k1.size(); ++x) {
      if (k1[x] > k2[x]) return false;
      if (k1[x] < k2[x]) strict = true;
    }
  }
  return strict;
}

bool globally_preferred(const EnrichedModel& m1, const EnrichedModel& m2,
                        const std::vector<EnrichedModel>& aspect_minimal_pool) {
  check_same_structure(m1, m2);
  if (std::find(aspect_minimal_pool.begin(), aspect_minimal_pool.end(), m1) == aspect_minimal_pool.end()) return false;
  return pointwise_below(m1.ranks.global, m2.ranks.global);
}

RankFunction least_rank_function(std::size_t n, const std::vector<std::pair<ElementSet, ElementSet>>& constraints) {
  RankFunction k(n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [ext, viol] : constraints) {
      auto m = min_rank(k, ext);
      if (!m) continue;
      for (std::size_t x = 0; x < n; ++x) {
        if (ext[x] && viol[x] && k[x] == *m) {
          ++k[x];
          changed = true;
          if (k[x] > n) throw Error("no rank function satisfies the typicality constraints");
        }
      }
    }
  }
  return compress(k);
}

unsigned default_rank_bound(const KnowledgeBase& kb) { return static_cast<unsigned>(kb.defeasible().size()) + 1; }

EnrichedSemantics::EnrichedSemantics(KnowledgeBase kb, std::shared_ptr<const Domain> domain, unsigned rank_bound)
    : kb_(std::move(kb)), domain_(std::move(domain)), aspects_(aspect_set(kb_)), bound_(rank_bound) {
  const Domain& d = *domain_;
  violated_.assign(d.size(), {});
  for (const auto& a : kb_.defeasible()) {
    auto ext = eval_concept(d, a.lhs);
    const std::size_t j = violations_.size();
    violations_.push_back(and_not(ext, eval_concept(d, a.rhs)));
    for (std::size_t x = 0; x < d.size(); ++x) {
      if (violations_[j][x]) violated_[x].push_back(j);
    }
    if (std::none_of(ext.begin(), ext.end(), [](bool b) { return b; })) {
      axiom_antecedent_.push_back(npos);
      continue;
    }
    auto it = std::find(antecedents_.begin(), antecedents_.end(), ext);
    axiom_antecedent_.push_back(static_cast<std::size_t>(it - antecedents_.begin()));
    if (it == antecedents_.end()) antecedents_.push_back(std::move(ext));
  }
}

const std::vector<RankFunction>& EnrichedSemantics::least_aspect_ranks() const {
  std::lock_guard lock(mutex_);
  if (least_aspects_) return *least_aspects_;
  std::vector<RankFunction> out;
  const auto& defs = kb_.defeasible();
  for (const auto& aspect : aspects_.aspects()) {
    std::vector<std::pair<ElementSet, ElementSet>> constraints;
    for (std::size_t j = 0; j < defs.size(); ++j) {
      if (defs[j].rhs == aspect) constraints.emplace_back(eval_concept(*domain_, defs[j].lhs), violations_[j]);
    }
    auto k = least_rank_function(domain_->size(), constraints);
    if (!k.empty() && *std::max_element(k.begin(), k.end()) > bound_)
      throw SearchOverflow(bound_, "least ranks for aspect " + to_string(aspect));
    out.push_back(std::move(k));
  }
  least_aspects_ = std::move(out);
  return *least_aspects_;
}

std::optional<RankFunction> EnrichedSemantics::least_solution(
    const std::vector<unsigned>& kappa, const RankFunction& base,
    const std::vector<std::pair<std::size_t, std::size_t>>& fixed, bool coupled) const {
  const std::size_t n = domain_->size();
  RankFunction g = base;
  for (std::size_t i = 0; i < antecedents_.size(); ++i) {
    for (std::size_t x = 0; x < n; ++x) {
      if (antecedents_[i][x]) g[x] = std::max(g[x], kappa[i]);
    }
  }
  // Level of an element: highest antecedent rank among the axioms it violates.
  std::vector<long> level(n, -1);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t j : violated_[x]) {
      const unsigned r = kappa[axiom_antecedent_[j]];
      g[x] = std::max(g[x], r + 1);
      level[x] = std::max(level[x], static_cast<long>(r));
    }
  }

  auto pairs = fixed;
  if (coupled) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (!violated_[y].empty() && level[x] < level[y]) pairs.emplace_back(x, y);
      }
    }
  }
  for (std::size_t round = 0;; ++round) {
    bool changed = false;
    for (const auto& [x, y] : pairs) {
      if (g[y] < g[x] + 1) {
        g[y] = g[x] + 1;
        changed = true;
      }
    }
    if (!changed) break;
    if (round == n) return std::nullopt;
  }
  for (std::size_t i = 0; i < antecedents_.size(); ++i) {
    if (min_rank(g, antecedents_[i]) != kappa[i]) return std::nullopt;
  }
  return g;
}

const std::vector<EnrichedModel>& EnrichedSemantics::minimal_models() const {
  std::lock_guard lock(mutex_);
  if (minimal_) return *minimal_;
  const auto& least = least_aspect_ranks();
  const std::size_t n = domain_->size();

  std::vector<std::pair<std::size_t, std::size_t>> fixed;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      bool below = false;
      bool above = false;
      for (const auto& k : least) {
        below = below || k[x] < k[y];
        above = above || k[y] < k[x];
      }
      if (below && !above) fixed.emplace_back(x, y);
    }
  }

  std::set<RankFunction> candidates;
  std::vector<unsigned> kappa(antecedents_.size(), 0);
  const RankFunction base(n, 0);
  do {
    if (auto g = least_solution(kappa, base, fixed, true)) candidates.insert(std::move(*g));
  } while (advance(kappa, bound_));
  if (candidates.empty())
    throw SearchOverflow(bound_, "no enriched model with the least aspect ranks was found");

  std::vector<EnrichedModel> out;
  for (const auto& g : candidates) {
    const bool dominated = std::any_of(candidates.begin(), candidates.end(),
                                       [&](const RankFunction& h) { return pointwise_below(h, g); });
    if (dominated) continue;
    if (*std::max_element(g.begin(), g.end()) > bound_) throw SearchOverflow(bound_, "minimal enriched model");
    out.push_back(EnrichedModel{domain_, aspects_, RankAssignment{least, g}});
  }
  minimal_ = std::move(out);
  return *minimal_;
}

std::optional<EnrichedModel> EnrichedSemantics::countermodel(const Axiom& query) const {
  for (const auto& m : minimal_models()) {
    if (!holds_in(*domain_, m.ranks.global, query)) return m;
  }
  return std::nullopt;
}

const std::vector<EnrichedSemantics::Solution>& EnrichedSemantics::solutions(const std::optional<ConceptExpr>& lhs,
                                                                          Regime regime) const {
  std::lock_guard lock(mutex_);
  const std::size_t n = domain_->size();
  ElementSet ext = lhs ? eval_concept(*domain_, *lhs) : ElementSet(n, false);
  auto key = std::tuple{regime, lhs.has_value(), ext};
  if (auto it = solutions_.find(key); it != solutions_.end()) return it->second;

  std::vector<Solution> out;
  std::vector<unsigned> kappa(antecedents_.size() + (lhs ? 1 : 0), 0);
  do {
    RankFunction base(n, 0);
    const unsigned level = lhs ? kappa.back() : 0;
    if (lhs) {
      for (std::size_t x = 0; x < n; ++x) {
        if (ext[x]) base[x] = level;
      }
    }
    auto g = least_solution(kappa, base, {}, regime == Regime::Enriched);
    if (!g || (lhs && min_rank(*g, ext) != level)) continue;
    out.push_back(Solution{std::move(*g), level});
  } while (advance(kappa, bound_));
  return solutions_.emplace(std::move(key), std::move(out)).first->second;
}

std::optional<RankFunction> EnrichedSemantics::any_countermodel(const Axiom& query, Regime regime) const {
  auto within_bound = [&](const RankFunction& g) -> std::optional<RankFunction> {
    auto k = compress(g);
    if (!k.empty() && *std::max_element(k.begin(), k.end()) > bound_) return std::nullopt;
    return k;
  };
  const ElementSet lhs = eval_concept(*domain_, query.lhs);
  const ElementSet bad = and_not(lhs, eval_concept(*domain_, query.rhs));
  if (std::none_of(bad.begin(), bad.end(), [](bool b) { return b; })) return std::nullopt;

  if (!query.is_defeasible()) {
    for (const auto& s : solutions(std::nullopt, regime)) {
      if (auto k = within_bound(s.global)) return k;
    }
    return std::nullopt;
  }
  for (const auto& s : solutions(query.lhs, regime)) {
    bool witness = false;
    for (std::size_t x = 0; x < bad.size() && !witness; ++x) witness = bad[x] && s.global[x] == s.level;
    if (!witness) continue;
    if (auto k = within_bound(s.global)) return k;
  }
  return std::nullopt;
}

SinglePrefModel EnrichedSemantics::least_single_pref_model() const {
  std::vector<std::pair<ElementSet, ElementSet>> constraints;
  const auto& defs = kb_.defeasible();
  for (std::size_t j = 0; j < defs.size(); ++j) {
    constraints.emplace_back(eval_concept(*domain_, defs[j].lhs), violations_[j]);
  }
  auto k = least_rank_function(domain_->size(), constraints);
  if (!k.empty() && *std::max_element(k.begin(), k.end()) > bound_)
    throw SearchOverflow(bound_, "minimal single-preference model");
  return SinglePrefModel{domain_, std::move(k)};
}

bool EnrichedSemantics::single_pref_entails(const Axiom& query) const {
  return holds_in(*domain_, least_single_pref_model().global, query);
}

EnrichedModel EnrichedSemantics::uniform_model(const RankFunction& global) const {
  return EnrichedModel{domain_, aspects_, RankAssignment{std::vector<RankFunction>(aspects_.size(), global), global}};
}

std::vector<RankFunction> all_rank_functions(std::size_t n, unsigned bound) {
  std::vector<RankFunction> out;
  std::vector<unsigned> v(n, 0);
  do {
    if (is_rank_function(v)) out.push_back(v);
  } while (advance(v, bound));
  return out;
}

ExhaustiveResult enumerate_enriched_models(const KnowledgeBase& kb, std::shared_ptr<const Domain> domain,
                                           unsigned rank_bound, CouplingMode mode, std::size_t budget) {
  const Domain& d = *domain;
  const AspectSet aspects = aspect_set(kb);
  std::size_t raw = 1;
  for (std::size_t i = 0; i < d.size() && raw <= budget; ++i) raw *= rank_bound + 1;
  if (raw > budget) throw SearchOverflow(rank_bound, "exhaustive enumeration budget");
  const auto functions = all_rank_functions(d.size(), rank_bound);

  // Each per-aspect function only has to satisfy the axioms whose right-hand
  // side is that aspect; the global one all of them.
  auto filter = [&](auto keep) {
    std::vector<RankFunction> out;
    for (const auto& k : functions) {
      if (keep(k)) out.push_back(k);
    }
    return out;
  };
  std::vector<std::vector<RankFunction>> per_aspect;
  std::size_t combos = 1;
  for (const auto& aspect : aspects.aspects()) {
    per_aspect.push_back(filter([&](const RankFunction& k) {
      return std::all_of(kb.defeasible().begin(), kb.defeasible().end(),
                         [&](const Axiom& a) { return !(a.rhs == aspect) || typicality_holds(d, k, a); });
    }));
    combos *= std::max<std::size_t>(per_aspect.back().size(), 1);
    if (combos > budget) throw SearchOverflow(rank_bound, "exhaustive enumeration budget");
  }
  auto globals = filter([&](const RankFunction& k) { return satisfies_kb(SinglePrefModel{domain, k}, kb); });
  combos *= std::max<std::size_t>(globals.size(), 1);
  if (combos > budget) throw SearchOverflow(rank_bound, "exhaustive enumeration budget");

  ExhaustiveResult r;
  std::vector<unsigned> index(aspects.size() + 1, 0);
  auto empty = [](const auto& v) { return v.empty(); };
  if (globals.empty() || std::any_of(per_aspect.begin(), per_aspect.end(), empty)) return r;
  for (;;) {
    RankAssignment ranks;
    for (std::size_t a = 0; a < per_aspect.size(); ++a) ranks.per_aspect.push_back(per_aspect[a][index[a]]);
    ranks.global = globals[index.back()];
    EnrichedModel m{domain, aspects, std::move(ranks)};
    if (check_coupling(m, kb, mode) && satisfies_kb(m, kb)) r.models.push_back(std::move(m));

    std::size_t pos = index.size();
    while (pos-- > 0) {
      const std::size_t limit = pos == per_aspect.size() ? globals.size() : per_aspect[pos].size();
      if (++index[pos] < limit) break;
      index[pos] = 0;
    }
    if (pos == npos) break;
  }
  std::sort(r.models.begin(), r.models.end(), [](const auto& a, const auto& b) { return a.ranks < b.ranks; });

  for (const auto& m : r.models) {
    if (std::none_of(r.models.begin(), r.models.end(), [&](const auto& o) { return aspect_preferred(o, m); }))
      r.aspect_minimal.push_back(m);
  }
  for (const auto& m : r.models) {
    const bool beaten = std::any_of(r.aspect_minimal.begin(), r.aspect_minimal.end(),
                                    [&](const auto& o) { return globally_preferred(o, m, r.aspect_minimal); });
    if (beaten) continue;
    r.literal_minimal.push_back(m);
    if (std::find(r.aspect_minimal.begin(), r.aspect_minimal.end(), m) != r.aspect_minimal.end())
      r.minimal.push_back(m);
  }
  return r;
}

std::vector<SinglePrefModel> enumerate_single_pref_models(const KnowledgeBase& kb, std::shared_ptr<const Domain> domain,
                                                          unsigned rank_bound) {
  std::vector<SinglePrefModel> out;
  for (auto& k : all_rank_functions(domain->size(), rank_bound)) {
    SinglePrefModel m{domain, std::move(k)};
    if (satisfies_kb(m, kb)) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace typika
