#include "typika/concept.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace typika {

struct ConceptExpr::Node {
  ConceptKind kind;
  std::string name;
  std::vector<ConceptExpr> children;
  std::size_t hash;
};

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

ConceptExpr ConceptExpr::atom(std::string name) {
  std::size_t h = combine(std::hash<std::string>{}(name), static_cast<std::size_t>(ConceptKind::Atom));
  return ConceptExpr(std::make_shared<const Node>(Node{ConceptKind::Atom, std::move(name), {}, h}));
}

ConceptExpr ConceptExpr::top() {
  static const ConceptExpr t(std::make_shared<const Node>(Node{ConceptKind::Top, {}, {}, 0x7011}));
  return t;
}

ConceptExpr ConceptExpr::bottom() {
  static const ConceptExpr b(std::make_shared<const Node>(Node{ConceptKind::Bottom, {}, {}, 0xb077}));
  return b;
}

ConceptExpr ConceptExpr::negation(ConceptExpr c) {
  std::size_t h = combine(c.hash(), static_cast<std::size_t>(ConceptKind::Not));
  return ConceptExpr(std::make_shared<const Node>(Node{ConceptKind::Not, {}, {std::move(c)}, h}));
}

ConceptExpr ConceptExpr::conjunction(ConceptExpr lhs, ConceptExpr rhs) {
  std::size_t h = combine(combine(lhs.hash(), rhs.hash()), static_cast<std::size_t>(ConceptKind::And));
  return ConceptExpr(
      std::make_shared<const Node>(Node{ConceptKind::And, {}, {std::move(lhs), std::move(rhs)}, h}));
}

ConceptExpr ConceptExpr::disjunction(ConceptExpr lhs, ConceptExpr rhs) {
  std::size_t h = combine(combine(lhs.hash(), rhs.hash()), static_cast<std::size_t>(ConceptKind::Or));
  return ConceptExpr(
      std::make_shared<const Node>(Node{ConceptKind::Or, {}, {std::move(lhs), std::move(rhs)}, h}));
}

ConceptExpr ConceptExpr::exists(std::string role, ConceptExpr filler) {
  std::size_t h = combine(combine(std::hash<std::string>{}(role), filler.hash()),
                          static_cast<std::size_t>(ConceptKind::Exists));
  return ConceptExpr(
      std::make_shared<const Node>(Node{ConceptKind::Exists, std::move(role), {std::move(filler)}, h}));
}

ConceptExpr ConceptExpr::forall(std::string role, ConceptExpr filler) {
  std::size_t h = combine(combine(std::hash<std::string>{}(role), filler.hash()),
                          static_cast<std::size_t>(ConceptKind::Forall));
  return ConceptExpr(
      std::make_shared<const Node>(Node{ConceptKind::Forall, std::move(role), {std::move(filler)}, h}));
}

ConceptKind ConceptExpr::kind() const noexcept { return node_->kind; }
const std::string& ConceptExpr::name() const noexcept { return node_->name; }

const ConceptExpr& ConceptExpr::operand() const {
  if (node_->children.size() != 1) throw std::logic_error("concept has no single operand");
  return node_->children[0];
}

const ConceptExpr& ConceptExpr::lhs() const {
  if (node_->children.size() != 2) throw std::logic_error("concept is not binary");
  return node_->children[0];
}

const ConceptExpr& ConceptExpr::rhs() const {
  if (node_->children.size() != 2) throw std::logic_error("concept is not binary");
  return node_->children[1];
}

bool ConceptExpr::is_literal() const noexcept {
  return kind() == ConceptKind::Atom || (kind() == ConceptKind::Not && operand().is_atom());
}

std::size_t ConceptExpr::hash() const noexcept { return node_->hash; }

bool operator==(const ConceptExpr& a, const ConceptExpr& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const ConceptExpr& a, const ConceptExpr& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  if (auto c = a.node_->name <=> b.node_->name; c != 0) return c;
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  if (auto c = ca.size() <=> cb.size(); c != 0) return c;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (auto c = ca[i] <=> cb[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace {

void print(std::ostream& os, const ConceptExpr& c) {
  switch (c.kind()) {
    case ConceptKind::Atom: os << c.name(); break;
    case ConceptKind::Top: os << "top"; break;
    case ConceptKind::Bottom: os << "bot"; break;
    case ConceptKind::Not:
      os << "not ";
      print(os, c.operand());
      break;
    case ConceptKind::And:
    case ConceptKind::Or:
      os << '(';
      print(os, c.lhs());
      os << (c.kind() == ConceptKind::And ? " and " : " or ");
      print(os, c.rhs());
      os << ')';
      break;
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      os << (c.kind() == ConceptKind::Exists ? "exists " : "forall ") << c.name() << '.';
      print(os, c.operand());
      break;
  }
}

}  // namespace

std::string to_string(const ConceptExpr& c) {
  std::ostringstream os;
  print(os, c);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ConceptExpr& c) {
  print(os, c);
  return os;
}

ConceptExpr to_nnf(const ConceptExpr& c) {
  switch (c.kind()) {
    case ConceptKind::Atom:
    case ConceptKind::Top:
    case ConceptKind::Bottom: return c;
    case ConceptKind::Not: return nnf_negate(c.operand());
    case ConceptKind::And: return ConceptExpr::conjunction(to_nnf(c.lhs()), to_nnf(c.rhs()));
    case ConceptKind::Or: return ConceptExpr::disjunction(to_nnf(c.lhs()), to_nnf(c.rhs()));
    case ConceptKind::Exists: return ConceptExpr::exists(c.name(), to_nnf(c.operand()));
    case ConceptKind::Forall: return ConceptExpr::forall(c.name(), to_nnf(c.operand()));
  }
  return c;
}

ConceptExpr nnf_negate(const ConceptExpr& c) {
  switch (c.kind()) {
    case ConceptKind::Atom: return ConceptExpr::negation(c);
    case ConceptKind::Top: return ConceptExpr::bottom();
    case ConceptKind::Bottom: return ConceptExpr::top();
    case ConceptKind::Not: return to_nnf(c.operand());
    case ConceptKind::And: return ConceptExpr::disjunction(nnf_negate(c.lhs()), nnf_negate(c.rhs()));
    case ConceptKind::Or: return ConceptExpr::conjunction(nnf_negate(c.lhs()), nnf_negate(c.rhs()));
    case ConceptKind::Exists: return ConceptExpr::forall(c.name(), nnf_negate(c.operand()));
    case ConceptKind::Forall: return ConceptExpr::exists(c.name(), nnf_negate(c.operand()));
  }
  return c;
}

ConceptExpr negate(const ConceptExpr& c) {
  if (c.kind() == ConceptKind::Not) return c.operand();
  return ConceptExpr::negation(c);
}

ConceptExpr conjoin(std::span<const ConceptExpr> concepts) {
  if (concepts.empty()) return ConceptExpr::top();
  ConceptExpr acc = concepts.front();
  for (std::size_t i = 1; i < concepts.size(); ++i) acc = ConceptExpr::conjunction(acc, concepts[i]);
  return acc;
}

void collect_subconcepts(const ConceptExpr& c, ConceptSet& out) {
  if (!out.insert(c).second) return;
  switch (c.kind()) {
    case ConceptKind::Not:
    case ConceptKind::Exists:
    case ConceptKind::Forall: collect_subconcepts(c.operand(), out); break;
    case ConceptKind::And:
    case ConceptKind::Or:
      collect_subconcepts(c.lhs(), out);
      collect_subconcepts(c.rhs(), out);
      break;
    default: break;
  }
}

namespace {

template <typename F>
void visit_tree(const ConceptExpr& c, F&& f) {
  f(c);
  switch (c.kind()) {
    case ConceptKind::Not:
    case ConceptKind::Exists:
    case ConceptKind::Forall: visit_tree(c.operand(), f); break;
    case ConceptKind::And:
    case ConceptKind::Or:
      visit_tree(c.lhs(), f);
      visit_tree(c.rhs(), f);
      break;
    default: break;
  }
}

}  // namespace

std::set<std::string> atoms_of(const ConceptExpr& c) {
  std::set<std::string> out;
  visit_tree(c, [&](const ConceptExpr& e) {
    if (e.is_atom()) out.insert(e.name());
  });
  return out;
}

std::set<std::string> roles_of(const ConceptExpr& c) {
  std::set<std::string> out;
  visit_tree(c, [&](const ConceptExpr& e) {
    if (e.kind() == ConceptKind::Exists || e.kind() == ConceptKind::Forall) out.insert(e.name());
  });
  return out;
}

unsigned role_depth(const ConceptExpr& c) {
  switch (c.kind()) {
    case ConceptKind::Not: return role_depth(c.operand());
    case ConceptKind::And:
    case ConceptKind::Or: return std::max(role_depth(c.lhs()), role_depth(c.rhs()));
    case ConceptKind::Exists:
    case ConceptKind::Forall: return 1 + role_depth(c.operand());
    default: return 0;
  }
}

std::string to_string(const Axiom& a) {
  if (a.is_defeasible()) return "T(" + to_string(a.lhs) + ") => " + to_string(a.rhs);
  return to_string(a.lhs) + " => " + to_string(a.rhs);
}

std::ostream& operator<<(std::ostream& os, const Axiom& a) { return os << to_string(a); }

std::string to_string(const Assertion& a) {
  if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
    if (ca->typical) return "T(" + to_string(ca->expr) + ")(" + ca->individual + ")";
    // Complex concepts are already parenthesized; a bare atom or literal needs
    // no extra wrapping except for `not`, whose operand would swallow "(a)".
    if (ca->expr.kind() == ConceptKind::Not || ca->expr.kind() == ConceptKind::Exists ||
        ca->expr.kind() == ConceptKind::Forall)
      return "(" + to_string(ca->expr) + ")(" + ca->individual + ")";
    return to_string(ca->expr) + "(" + ca->individual + ")";
  }
  const auto& ra = std::get<RoleAssertion>(a);
  return ra.role + "(" + ra.subject + ", " + ra.object + ")";
}

void KnowledgeBase::add(Axiom axiom) {
  auto& target = axiom.is_defeasible() ? defeasible_ : strict_;
  if (std::find(target.begin(), target.end(), axiom) == target.end()) target.push_back(std::move(axiom));
}

void KnowledgeBase::add(Assertion assertion) {
  if (std::find(abox_.begin(), abox_.end(), assertion) == abox_.end()) abox_.push_back(std::move(assertion));
}

std::string to_string(const KnowledgeBase& kb) {
  std::string out;
  for (const auto& a : kb.strict()) out += to_string(a) + "\n";
  for (const auto& a : kb.defeasible()) out += to_string(a) + "\n";
  for (const auto& a : kb.abox()) out += to_string(a) + "\n";
  return out;
}

AspectSet::AspectSet(std::vector<ConceptExpr> aspects) {
  for (auto& a : aspects) {
    if (!contains(a)) aspects_.push_back(std::move(a));
  }
}

bool AspectSet::contains(const ConceptExpr& c) const { return index_of(c) != aspects_.size(); }

std::size_t AspectSet::index_of(const ConceptExpr& c) const {
  return static_cast<std::size_t>(std::find(aspects_.begin(), aspects_.end(), c) - aspects_.begin());
}

std::vector<ConceptExpr> concepts_of(const Axiom& a) { return {a.lhs, a.rhs}; }

AspectSet aspect_set(const KnowledgeBase& kb) {
  std::vector<ConceptExpr> found;
  auto visit = [&](const ConceptExpr& root) {
    visit_tree(root, [&](const ConceptExpr& e) { found.push_back(e); });
  };
  for (const auto& a : kb.strict()) {
    visit(a.lhs);
    visit(a.rhs);
  }
  for (const auto& a : kb.defeasible()) {
    visit(a.lhs);
    visit(a.rhs);
  }
  return AspectSet(std::move(found));
}

ConceptSet subconcept_closure(const KnowledgeBase& kb, const ConceptSet& extra) {
  ConceptSet subs;
  for (const auto* axioms : {&kb.strict(), &kb.defeasible()}) {
    for (const auto& a : *axioms) {
      collect_subconcepts(a.lhs, subs);
      collect_subconcepts(a.rhs, subs);
    }
  }
  for (const auto& a : kb.abox()) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) collect_subconcepts(ca->expr, subs);
  }
  for (const auto& c : extra) collect_subconcepts(c, subs);

  ConceptSet closed = subs;
  for (const auto& c : subs) closed.insert(negate(c));
  return closed;
}

}  // namespace typika
