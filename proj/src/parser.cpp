#include "typika/parser.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

namespace typika {

namespace {

enum class Tok {
  Ident,
  TOpen,  // "T(" introducing a typicality head
  Top,
  Bot,
  Not,
  And,
  Or,
  Exists,
  Forall,
  LParen,
  RParen,
  Dot,
  Comma,
  Arrow,
  End,
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::TOpen: return "'T('";
    case Tok::Top: return "'top'";
    case Tok::Bot: return "'bot'";
    case Tok::Not: return "'not'";
    case Tok::And: return "'and'";
    case Tok::Or: return "'or'";
    case Tok::Exists: return "'exists'";
    case Tok::Forall: return "'forall'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::Arrow: return "'=>'";
    case Tok::End: return "end of line";
  }
  return "token";
}

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

struct Utf8Alias {
  std::string_view bytes;
  Tok kind;
};

constexpr Utf8Alias kAliases[] = {
    {"\xC2\xAC", Tok::Not},       // ¬
    {"\xE2\x8A\x93", Tok::And},   // ⊓
    {"\xE2\x8A\x94", Tok::Or},    // ⊔
    {"\xE2\x8A\xA4", Tok::Top},   // ⊤
    {"\xE2\x8A\xA5", Tok::Bot},   // ⊥
    {"\xE2\x88\x83", Tok::Exists},// ∃
    {"\xE2\x88\x80", Tok::Forall},// ∀
    {"\xE2\x8A\x91", Tok::Arrow}, // ⊑
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const std::size_t col = i + 1;
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      std::string word(line.substr(i, j - i));
      i = j;
      if (word == "T" && i < line.size() && line[i] == '(') {
        out.push_back({Tok::TOpen, "T(", col});
        ++i;
        continue;
      }
      Tok kind = Tok::Ident;
      if (word == "top") kind = Tok::Top;
      else if (word == "bot") kind = Tok::Bot;
      else if (word == "not") kind = Tok::Not;
      else if (word == "and") kind = Tok::And;
      else if (word == "or") kind = Tok::Or;
      else if (word == "exists") kind = Tok::Exists;
      else if (word == "forall") kind = Tok::Forall;
      out.push_back({kind, std::move(word), col});
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", col}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", col}); ++i; continue;
      case '.': out.push_back({Tok::Dot, ".", col}); ++i; continue;
      case ',': out.push_back({Tok::Comma, ",", col}); ++i; continue;
      case '~': out.push_back({Tok::Not, "~", col}); ++i; continue;
      case '=':
        if (i + 1 < line.size() && line[i + 1] == '>') {
          out.push_back({Tok::Arrow, "=>", col});
          i += 2;
          continue;
        }
        break;
      default: break;
    }
    bool matched = false;
    for (const auto& alias : kAliases) {
      if (line.substr(i).starts_with(alias.bytes)) {
        out.push_back({alias.kind, std::string(alias.bytes), col});
        i += alias.bytes.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(line_no, col, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line.size() + 1});
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t line_no) : toks_(std::move(tokens)), line_(line_no) {}

  bool at_end() const { return peek().kind == Tok::End; }

  std::variant<Axiom, Assertion> statement() {
    if (peek().kind == Tok::TOpen) {
      next();
      ConceptExpr c = parse_concept_expr();
      expect(Tok::RParen);
      if (accept(Tok::Arrow)) {
        ConceptExpr rhs = parse_concept_expr();
        finish();
        return Axiom::defeasible(std::move(c), std::move(rhs));
      }
      if (accept(Tok::LParen)) {
        std::string ind = expect(Tok::Ident).text;
        expect(Tok::RParen);
        finish();
        return Assertion{ConceptAssertion{std::move(c), std::move(ind), true}};
      }
      fail("expected '=>' or '(' after typicality head");
    }
    ConceptExpr c = parse_concept_expr();
    if (accept(Tok::Arrow)) {
      ConceptExpr rhs = parse_concept_expr();
      finish();
      return Axiom::strict(std::move(c), std::move(rhs));
    }
    if (accept(Tok::LParen)) {
      std::string first = expect(Tok::Ident).text;
      if (accept(Tok::Comma)) {
        if (!c.is_atom()) fail("role assertion needs a role name");
        std::string second = expect(Tok::Ident).text;
        expect(Tok::RParen);
        finish();
        return Assertion{RoleAssertion{c.name(), std::move(first), std::move(second)}};
      }
      expect(Tok::RParen);
      finish();
      return Assertion{ConceptAssertion{std::move(c), std::move(first), false}};
    }
    fail("expected '=>' or '('");
  }

  ConceptExpr parse_concept_expr() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: return ConceptExpr::atom(next().text);
      case Tok::Top: next(); return ConceptExpr::top();
      case Tok::Bot: next(); return ConceptExpr::bottom();
      case Tok::Not: next(); return ConceptExpr::negation(parse_concept_expr());
      case Tok::Exists:
      case Tok::Forall: {
        const bool ex = next().kind == Tok::Exists;
        std::string role = expect(Tok::Ident).text;
        expect(Tok::Dot);
        ConceptExpr filler = parse_concept_expr();
        return ex ? ConceptExpr::exists(std::move(role), std::move(filler))
                  : ConceptExpr::forall(std::move(role), std::move(filler));
      }
      case Tok::LParen: {
        next();
        ConceptExpr acc = parse_concept_expr();
        if (peek().kind == Tok::And || peek().kind == Tok::Or) {
          const Tok op = peek().kind;
          while (accept(op)) {
            ConceptExpr rhs = parse_concept_expr();
            acc = op == Tok::And ? ConceptExpr::conjunction(std::move(acc), std::move(rhs))
                                 : ConceptExpr::disjunction(std::move(acc), std::move(rhs));
          }
          if (peek().kind == Tok::And || peek().kind == Tok::Or)
            fail("mixing 'and' and 'or' needs explicit parentheses");
        }
        expect(Tok::RParen);
        return acc;
      }
      case Tok::TOpen: fail("typicality operator T is only allowed at the head of an axiom or assertion");
      default: fail(std::string("expected concept, found ") + describe(t.kind));
    }
  }

  void finish() {
    if (!at_end()) fail(std::string("expected end of line, found ") + describe(peek().kind));
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  const Token& expect(Tok k) {
    if (peek().kind != k)
      fail(std::string("expected ") + describe(k) + ", found " + describe(peek().kind));
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, peek().column, msg); }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    f(line, line_no);
    if (end == text.size()) break;
    start = end + 1;
    ++line_no;
  }
}

}  // namespace

KnowledgeBase parse_kb(std::string_view text) {
  KnowledgeBase kb;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    LineParser p(lex_line(line, line_no), line_no);
    if (p.at_end()) return;
    std::visit([&](auto&& s) { kb.add(std::move(s)); }, p.statement());
  });
  return kb;
}

Axiom parse_axiom(std::string_view text) {
  std::optional<Axiom> result;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    LineParser p(lex_line(line, line_no), line_no);
    if (p.at_end()) return;
    if (result) throw ParseError(line_no, 1, "a query is a single axiom");
    auto s = p.statement();
    if (!std::holds_alternative<Axiom>(s)) throw ParseError(line_no, 1, "query must be an inclusion, not an assertion");
    result = std::get<Axiom>(std::move(s));
  });
  if (!result) throw ParseError(1, 1, "empty query");
  return *result;
}

ConceptExpr parse_concept(std::string_view text) {
  LineParser p(lex_line(text, 1), 1);
  ConceptExpr c = p.parse_concept_expr();
  p.finish();
  return c;
}

}  // namespace typika
