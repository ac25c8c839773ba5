#pragma once

// Concept and knowledge-base syntax for ALC with a typicality operator.
//
// Concepts are immutable trees shared by pointer; equality and ordering are
// structural. T only appears at axiom level (Axiom::Kind::Defeasible) or as
// the `typical` flag of a concept assertion, never inside a ConceptExpr.

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace typika {

enum class ConceptKind { Atom, Top, Bottom, Not, And, Or, Exists, Forall };

class ConceptExpr {
 public:
  static ConceptExpr atom(std::string name);
  static ConceptExpr top();
  static ConceptExpr bottom();
  static ConceptExpr negation(ConceptExpr c);
  static ConceptExpr conjunction(ConceptExpr lhs, ConceptExpr rhs);
  static ConceptExpr disjunction(ConceptExpr lhs, ConceptExpr rhs);
  static ConceptExpr exists(std::string role, ConceptExpr filler);
  static ConceptExpr forall(std::string role, ConceptExpr filler);

  ConceptKind kind() const noexcept;
  /// Atom name, or role name for Exists/Forall. Empty otherwise.
  const std::string& name() const noexcept;
  /// Operand of Not, filler of Exists/Forall.
  const ConceptExpr& operand() const;
  const ConceptExpr& lhs() const;
  const ConceptExpr& rhs() const;

  bool is_atom() const noexcept { return kind() == ConceptKind::Atom; }
  /// An atom or a negated atom.
  bool is_literal() const noexcept;

  std::size_t hash() const noexcept;

  friend bool operator==(const ConceptExpr& a, const ConceptExpr& b) noexcept;
  friend std::strong_ordering operator<=>(const ConceptExpr& a, const ConceptExpr& b) noexcept;

 private:
  struct Node;
  explicit ConceptExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using ConceptSet = std::set<ConceptExpr>;

struct ConceptHash {
  std::size_t operator()(const ConceptExpr& c) const noexcept { return c.hash(); }
};

std::string to_string(const ConceptExpr& c);
std::ostream& operator<<(std::ostream& os, const ConceptExpr& c);

/// Negation normal form: negation is pushed down to atoms.
ConceptExpr to_nnf(const ConceptExpr& c);
/// Single negation: strips an outer Not, otherwise wraps.
ConceptExpr negate(const ConceptExpr& c);
/// NNF of the negation.
ConceptExpr nnf_negate(const ConceptExpr& c);

/// Conjunction of all members, Top for an empty range.
ConceptExpr conjoin(std::span<const ConceptExpr> concepts);

/// Every subexpression of `c`, including `c` itself.
void collect_subconcepts(const ConceptExpr& c, ConceptSet& out);
std::set<std::string> atoms_of(const ConceptExpr& c);
std::set<std::string> roles_of(const ConceptExpr& c);
unsigned role_depth(const ConceptExpr& c);

struct Axiom {
  enum class Kind { Strict, Defeasible };

  Kind kind = Kind::Strict;
  /// For a defeasible axiom T(C) => D this is C.
  ConceptExpr lhs = ConceptExpr::top();
  ConceptExpr rhs = ConceptExpr::top();

  static Axiom strict(ConceptExpr lhs, ConceptExpr rhs) { return {Kind::Strict, std::move(lhs), std::move(rhs)}; }
  static Axiom defeasible(ConceptExpr lhs, ConceptExpr rhs) {
    return {Kind::Defeasible, std::move(lhs), std::move(rhs)};
  }

  bool is_defeasible() const noexcept { return kind == Kind::Defeasible; }

  friend bool operator==(const Axiom&, const Axiom&) = default;
  friend auto operator<=>(const Axiom&, const Axiom&) = default;
};

std::string to_string(const Axiom& a);
std::ostream& operator<<(std::ostream& os, const Axiom& a);

struct ConceptAssertion {
  ConceptExpr expr;
  std::string individual;
  bool typical = false;

  friend bool operator==(const ConceptAssertion&, const ConceptAssertion&) = default;
};

struct RoleAssertion {
  std::string role;
  std::string subject;
  std::string object;

  friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
};

using Assertion = std::variant<ConceptAssertion, RoleAssertion>;

std::string to_string(const Assertion& a);

/// TBox (strict and defeasible inclusions) plus ABox. Insertion order is kept
/// for reporting; duplicates are dropped.
class KnowledgeBase {
 public:
  void add(Axiom axiom);
  void add(Assertion assertion);

  const std::vector<Axiom>& strict() const noexcept { return strict_; }
  const std::vector<Axiom>& defeasible() const noexcept { return defeasible_; }
  const std::vector<Assertion>& abox() const noexcept { return abox_; }

  bool empty() const noexcept { return strict_.empty() && defeasible_.empty() && abox_.empty(); }

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;

 private:
  std::vector<Axiom> strict_;
  std::vector<Axiom> defeasible_;
  std::vector<Assertion> abox_;
};

/// One statement per line, in the text format accepted by parse_kb.
std::string to_string(const KnowledgeBase& kb);

/// Concepts that index the per-aspect preference relations: every concept
/// subexpression occurring in the KB's axioms, deduplicated structurally, in
/// first-occurrence order.
class AspectSet {
 public:
  AspectSet() = default;
  explicit AspectSet(std::vector<ConceptExpr> aspects);

  const std::vector<ConceptExpr>& aspects() const noexcept { return aspects_; }
  std::size_t size() const noexcept { return aspects_.size(); }
  bool empty() const noexcept { return aspects_.empty(); }
  bool contains(const ConceptExpr& c) const;
  /// Position of `c`, or size() when absent.
  std::size_t index_of(const ConceptExpr& c) const;

  friend bool operator==(const AspectSet&, const AspectSet&) = default;

 private:
  std::vector<ConceptExpr> aspects_;
};

AspectSet aspect_set(const KnowledgeBase& kb);

/// All subconcepts of axioms, assertions and `extra`, closed under single
/// negation (see negate()).
ConceptSet subconcept_closure(const KnowledgeBase& kb, const ConceptSet& extra = {});

/// Concepts mentioned by an axiom (both sides).
std::vector<ConceptExpr> concepts_of(const Axiom& a);

}  // namespace typika
