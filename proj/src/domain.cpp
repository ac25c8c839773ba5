#include "typika/domain.hpp"

#include <algorithm>
#include <functional>

#include "typika/errors.hpp"

namespace typika {

std::vector<ConceptExpr> nnf_closure(const ConceptSet& seed) {
  ConceptSet out;
  for (const auto& c : seed) collect_subconcepts(to_nnf(c), out);
  ConceptSet negs;
  for (const auto& c : out) collect_subconcepts(nnf_negate(c), negs);
  out.insert(negs.begin(), negs.end());
  return {out.begin(), out.end()};
}

namespace {

void add_role_edges(Domain& d, const std::string& role) {
  auto& edges = d.role_edges[role];
  edges.clear();
  std::vector<std::vector<ConceptExpr>> fillers(d.size());
  for (std::size_t x = 0; x < d.size(); ++x) {
    for (const auto& c : d.types[x]) {
      if (c.kind() == ConceptKind::Forall && c.name() == role) fillers[x].push_back(c.operand());
    }
  }
  for (std::size_t x = 0; x < d.size(); ++x) {
    for (std::size_t y = 0; y < d.size(); ++y) {
      if (std::all_of(fillers[x].begin(), fillers[x].end(),
                      [&](const ConceptExpr& f) { return d.types[y].contains(f); }))
        edges.emplace_back(x, y);
    }
  }
}

void add_closure_roles(Domain& d) {
  std::set<std::string> roles;
  for (const auto& c : d.closure) {
    if (c.kind() == ConceptKind::Exists || c.kind() == ConceptKind::Forall) roles.insert(c.name());
  }
  for (const auto& r : roles) add_role_edges(d, r);
}

}  // namespace

Domain Domain::from_types(std::vector<ConceptSet> types) {
  Domain d;
  ConceptSet seed;
  for (const auto& t : types) seed.insert(t.begin(), t.end());
  d.closure = nnf_closure(seed);
  d.types = std::move(types);
  add_closure_roles(d);
  return d;
}

ElementSet eval_concept(const Domain& domain, const ConceptExpr& c) {
  const std::size_t n = domain.size();
  ElementSet out(n, false);
  switch (c.kind()) {
    case ConceptKind::Atom:
      for (std::size_t i = 0; i < n; ++i) out[i] = domain.types[i].contains(c);
      break;
    case ConceptKind::Top: out.assign(n, true); break;
    case ConceptKind::Bottom: break;
    case ConceptKind::Not: {
      auto inner = eval_concept(domain, c.operand());
      for (std::size_t i = 0; i < n; ++i) out[i] = !inner[i];
      break;
    }
    case ConceptKind::And:
    case ConceptKind::Or: {
      auto l = eval_concept(domain, c.lhs());
      auto r = eval_concept(domain, c.rhs());
      for (std::size_t i = 0; i < n; ++i) out[i] = c.kind() == ConceptKind::And ? (l[i] && r[i]) : (l[i] || r[i]);
      break;
    }
    case ConceptKind::Exists:
    case ConceptKind::Forall: {
      auto inner = eval_concept(domain, c.operand());
      const bool ex = c.kind() == ConceptKind::Exists;
      if (!ex) out.assign(n, true);
      auto it = domain.role_edges.find(c.name());
      if (it == domain.role_edges.end()) break;
      for (const auto& [x, y] : it->second) {
        if (ex && inner[y]) out[x] = true;
        if (!ex && !inner[y]) out[x] = false;
      }
      break;
    }
  }
  return out;
}

std::optional<std::map<std::string, std::size_t>> map_individuals(const Domain& domain, const KnowledgeBase& kb) {
  std::map<std::string, std::vector<ConceptExpr>> required;
  std::vector<RoleAssertion> roles;
  for (const auto& a : kb.abox()) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      required[ca->individual].push_back(ca->expr);
    } else {
      const auto& ra = std::get<RoleAssertion>(a);
      required[ra.subject];
      required[ra.object];
      roles.push_back(ra);
    }
  }
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> candidates;
  for (const auto& [name, concepts] : required) {
    ElementSet ok(domain.size(), true);
    for (const auto& c : concepts) {
      auto ext = eval_concept(domain, c);
      for (std::size_t i = 0; i < ok.size(); ++i) ok[i] = ok[i] && ext[i];
    }
    std::vector<std::size_t> cands;
    for (std::size_t i = 0; i < ok.size(); ++i) {
      if (ok[i]) cands.push_back(i);
    }
    names.push_back(name);
    candidates.push_back(std::move(cands));
  }

  std::map<std::string, std::size_t> mapping;
  auto has_edge = [&](const std::string& role, std::size_t x, std::size_t y) {
    auto it = domain.role_edges.find(role);
    if (it == domain.role_edges.end()) return false;
    return std::find(it->second.begin(), it->second.end(), std::pair{x, y}) != it->second.end();
  };
  auto consistent = [&] {
    for (const auto& ra : roles) {
      auto s = mapping.find(ra.subject);
      auto o = mapping.find(ra.object);
      if (s != mapping.end() && o != mapping.end() && !has_edge(ra.role, s->second, o->second)) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> assign = [&](std::size_t i) {
    if (i == names.size()) return true;
    for (std::size_t x : candidates[i]) {
      mapping[names[i]] = x;
      if (consistent() && assign(i + 1)) return true;
    }
    mapping.erase(names[i]);
    return false;
  };
  if (!assign(0)) return std::nullopt;
  return mapping;
}

Domain build_canonical_domain(const RationalClosure& rc, const ConceptSet& extra, unsigned max_letters) {
  const KnowledgeBase& kb = rc.kb();
  Domain d;
  d.closure = nnf_closure(subconcept_closure(kb, extra));

  std::vector<ConceptExpr> letters;
  for (const auto& c : d.closure) {
    if (c.kind() == ConceptKind::Atom || c.kind() == ConceptKind::Exists) letters.push_back(c);
  }
  if (letters.size() > max_letters)
    throw Error("canonical domain needs 2^" + std::to_string(letters.size()) + " candidate types (limit 2^" +
                std::to_string(max_letters) + ")");

  std::map<ConceptExpr, bool> value;
  std::function<bool(const ConceptExpr&)> truth = [&](const ConceptExpr& c) -> bool {
    if (auto it = value.find(c); it != value.end()) return it->second;
    bool v = false;
    switch (c.kind()) {
      case ConceptKind::Top: v = true; break;
      case ConceptKind::Bottom: v = false; break;
      case ConceptKind::Not: v = !truth(c.operand()); break;
      case ConceptKind::And: v = truth(c.lhs()) && truth(c.rhs()); break;
      case ConceptKind::Or: v = truth(c.lhs()) || truth(c.rhs()); break;
      case ConceptKind::Forall: v = !truth(nnf_negate(c)); break;
      default: v = false; break;
    }
    value.emplace(c, v);
    return v;
  };

  const std::size_t total = std::size_t{1} << letters.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    value.clear();
    std::vector<ConceptExpr> literals;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const bool on = (mask >> i) & 1U;
      value[letters[i]] = on;
      literals.push_back(on ? letters[i] : nnf_negate(letters[i]));
    }
    if (!rc.satisfiable(literals)) continue;
    ConceptSet type;
    for (const auto& c : d.closure) {
      if (truth(c)) type.insert(c);
    }
    d.types.push_back(std::move(type));
  }
  if (d.types.empty()) throw InconsistentKb("knowledge base has no consistent domain element");

  add_closure_roles(d);
  for (const auto& a : kb.abox()) {
    if (const auto* ra = std::get_if<RoleAssertion>(&a); ra && !d.role_edges.contains(ra->role))
      add_role_edges(d, ra->role);
  }
  if (!kb.abox().empty()) {
    auto mapping = map_individuals(d, kb);
    if (!mapping) throw InconsistentKb("ABox individuals cannot be mapped to consistent domain elements");
    d.individuals = std::move(*mapping);
  }
  return d;
}

Domain build_canonical_domain(const KnowledgeBase& kb, const std::optional<Axiom>& query) {
  ConceptSet extra;
  if (query) {
    extra.insert(query->lhs);
    extra.insert(query->rhs);
  }
  return build_canonical_domain(RationalClosure(kb), extra);
}

}  // namespace typika
