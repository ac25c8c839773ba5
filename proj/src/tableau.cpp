#include "typika/tableau.hpp"

#include <algorithm>
#include <stdexcept>

namespace typika {

StrictTBox::StrictTBox(std::vector<Axiom> ax) : axioms(std::move(ax)) {
  for (const auto& a : axioms) {
    if (a.is_defeasible()) throw std::invalid_argument("strict TBox cannot hold " + to_string(a));
  }
}

std::vector<bool> FiniteModel::extension(const ConceptExpr& c) const {
  const std::size_t n = size();
  std::vector<bool> out(n, false);
  switch (c.kind()) {
    case ConceptKind::Atom:
      for (std::size_t i = 0; i < n; ++i) out[i] = atoms[i].contains(c.name());
      break;
    case ConceptKind::Top: out.assign(n, true); break;
    case ConceptKind::Bottom: break;
    case ConceptKind::Not: {
      auto inner = extension(c.operand());
      for (std::size_t i = 0; i < n; ++i) out[i] = !inner[i];
      break;
    }
    case ConceptKind::And:
    case ConceptKind::Or: {
      auto l = extension(c.lhs());
      auto r = extension(c.rhs());
      for (std::size_t i = 0; i < n; ++i) out[i] = c.kind() == ConceptKind::And ? (l[i] && r[i]) : (l[i] || r[i]);
      break;
    }
    case ConceptKind::Exists:
    case ConceptKind::Forall: {
      auto inner = extension(c.operand());
      const bool ex = c.kind() == ConceptKind::Exists;
      if (!ex) out.assign(n, true);
      auto it = edges.find(c.name());
      if (it == edges.end()) break;
      for (const auto& [from, to] : it->second) {
        if (ex && inner[to]) out[from] = true;
        if (!ex && !inner[to]) out[from] = false;
      }
      break;
    }
  }
  return out;
}

bool FiniteModel::satisfies(const StrictTBox& tbox) const {
  for (const auto& a : tbox.axioms) {
    auto l = extension(a.lhs);
    auto r = extension(a.rhs);
    for (std::size_t i = 0; i < size(); ++i) {
      if (l[i] && !r[i]) return false;
    }
  }
  return true;
}

namespace {

// Interned NNF concept for the tableau.
struct PNode {
  ConceptKind kind;
  std::string name;
  int a = -1;
  int b = -1;
};

using Label = std::vector<int>;  // sorted, unique

bool label_has(const Label& l, int id) { return std::binary_search(l.begin(), l.end(), id); }

bool label_insert(Label& l, int id) {
  auto it = std::lower_bound(l.begin(), l.end(), id);
  if (it != l.end() && *it == id) return false;
  l.insert(it, id);
  return true;
}

class Tableau {
 public:
  int intern(const ConceptExpr& c) {
    if (auto it = ids_.find(c); it != ids_.end()) return it->second;
    PNode node{c.kind(), {}};
    switch (c.kind()) {
      case ConceptKind::Atom: node.name = c.name(); break;
      case ConceptKind::Not: node.a = intern(c.operand()); break;
      case ConceptKind::And:
      case ConceptKind::Or:
        node.a = intern(c.lhs());
        node.b = intern(c.rhs());
        break;
      case ConceptKind::Exists:
      case ConceptKind::Forall:
        node.name = c.name();
        node.a = intern(c.operand());
        break;
      default: break;
    }
    const int id = static_cast<int>(pool_.size());
    pool_.push_back(std::move(node));
    ids_.emplace(c, id);
    return id;
  }

  void set_global(int id) { global_ = id; }

  // Returns the index of the node realizing `label`, or -1.
  int solve(Label label) {
    const int idx = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    if (global_ >= 0) label_insert(label, global_);
    if (solve_node(std::move(label), idx)) return idx;
    nodes_.resize(static_cast<std::size_t>(idx));
    return -1;
  }

  FiniteModel extract(int root) const;

 private:
  struct GraphNode {
    Label label;
    int blocked_by = -1;
    std::vector<std::pair<std::string, int>> edges;
  };

  bool saturate(Label& label) const {
    std::vector<int> work(label.begin(), label.end());
    while (!work.empty()) {
      const int id = work.back();
      work.pop_back();
      const PNode& p = pool_[static_cast<std::size_t>(id)];
      if (p.kind == ConceptKind::And) {
        if (label_insert(label, p.a)) work.push_back(p.a);
        if (label_insert(label, p.b)) work.push_back(p.b);
      }
    }
    for (int id : label) {
      const PNode& p = pool_[static_cast<std::size_t>(id)];
      if (p.kind == ConceptKind::Bottom) return false;
      if (p.kind == ConceptKind::Not && label_has(label, p.a)) return false;
    }
    return true;
  }

  bool solve_node(Label label, int idx) {
    if (!saturate(label)) return false;

    for (int id : label) {
      const PNode& p = pool_[static_cast<std::size_t>(id)];
      if (p.kind != ConceptKind::Or || label_has(label, p.a) || label_has(label, p.b)) continue;
      const std::size_t mark = nodes_.size();
      for (int branch : {p.a, p.b}) {
        Label next = label;
        label_insert(next, branch);
        if (solve_node(std::move(next), idx)) return true;
        nodes_.resize(mark);
      }
      return false;
    }

    for (const auto& [anc_label, anc_idx] : path_) {
      if (std::includes(anc_label.begin(), anc_label.end(), label.begin(), label.end())) {
        nodes_[static_cast<std::size_t>(idx)] = {std::move(label), anc_idx, {}};
        return true;
      }
    }

    path_.emplace_back(label, idx);
    std::vector<std::pair<std::string, int>> edges;
    for (int id : label) {
      const PNode& p = pool_[static_cast<std::size_t>(id)];
      if (p.kind != ConceptKind::Exists) continue;
      Label child{p.a};
      for (int other : label) {
        const PNode& q = pool_[static_cast<std::size_t>(other)];
        if (q.kind == ConceptKind::Forall && q.name == p.name) label_insert(child, q.a);
      }
      const int c = solve(std::move(child));
      if (c < 0) {
        path_.pop_back();
        return false;
      }
      edges.emplace_back(p.name, c);
    }
    path_.pop_back();
    nodes_[static_cast<std::size_t>(idx)] = {std::move(label), -1, std::move(edges)};
    return true;
  }

  std::vector<PNode> pool_;
  std::map<ConceptExpr, int> ids_;
  int global_ = -1;
  std::vector<GraphNode> nodes_;
  std::vector<std::pair<Label, int>> path_;
};

FiniteModel Tableau::extract(int root) const {
  auto resolve = [&](int i) {
    while (nodes_[static_cast<std::size_t>(i)].blocked_by >= 0) i = nodes_[static_cast<std::size_t>(i)].blocked_by;
    return i;
  };
  // Renumber unblocked nodes densely.
  std::vector<int> dense(nodes_.size(), -1);
  FiniteModel m;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].blocked_by >= 0) continue;
    dense[i] = static_cast<int>(m.atoms.size());
    std::set<std::string> atoms;
    for (int id : nodes_[i].label) {
      const PNode& p = pool_[static_cast<std::size_t>(id)];
      if (p.kind == ConceptKind::Atom) atoms.insert(p.name);
    }
    m.atoms.push_back(std::move(atoms));
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].blocked_by >= 0) continue;
    for (const auto& [role, target] : nodes_[i].edges) {
      m.edges[role].emplace_back(static_cast<std::size_t>(dense[i]),
                                 static_cast<std::size_t>(dense[static_cast<std::size_t>(resolve(target))]));
    }
  }
  m.root = static_cast<std::size_t>(dense[static_cast<std::size_t>(resolve(root))]);
  return m;
}

}  // namespace

SatResult is_satisfiable(const ConceptExpr& c, const StrictTBox& tbox, bool want_witness) {
  Tableau t;
  std::vector<ConceptExpr> internal;
  for (const auto& a : tbox.axioms) {
    internal.push_back(to_nnf(ConceptExpr::disjunction(ConceptExpr::negation(a.lhs), a.rhs)));
  }
  if (!internal.empty()) t.set_global(t.intern(conjoin(internal)));
  const int root = t.solve(Label{t.intern(to_nnf(c))});
  SatResult r;
  r.satisfiable = root >= 0;
  if (r.satisfiable && want_witness) r.witness = t.extract(root);
  return r;
}

bool entails_strict(const StrictTBox& tbox, const ConceptExpr& lhs, const ConceptExpr& rhs) {
  return !is_satisfiable(ConceptExpr::conjunction(lhs, ConceptExpr::negation(rhs)), tbox).satisfiable;
}

bool is_consistent_set(std::span<const ConceptExpr> concepts, const StrictTBox& tbox) {
  return is_satisfiable(conjoin(concepts), tbox).satisfiable;
}

}  // namespace typika
