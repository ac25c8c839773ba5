#pragma once

// Line-oriented text format for knowledge bases and queries.
//
//   concept  := IDENT | top | bot | not concept
//             | "(" concept and concept ")" | "(" concept or concept ")"
//             | exists IDENT "." concept | forall IDENT "." concept
//   axiom    := concept "=>" concept | "T(" concept ")" "=>" concept
//   abox     := concept "(" IDENT ")" | "T(" concept ")" "(" IDENT ")"
//             | IDENT "(" IDENT "," IDENT ")"
//
// `#` starts a comment. The Unicode symbols ¬ ⊓ ⊔ ⊤ ⊥ ∃ ∀ ⊑ are accepted as
// aliases, and a parenthesized group may chain one operator: (A and B and C).

#include <string_view>

#include "typika/concept.hpp"
#include "typika/errors.hpp"

namespace typika {

/// Throws ParseError.
KnowledgeBase parse_kb(std::string_view text);

/// A single axiom (strict or T-form). Throws ParseError.
Axiom parse_axiom(std::string_view text);

/// A single concept. Throws ParseError.
ConceptExpr parse_concept(std::string_view text);

}  // namespace typika
