// ast.hpp - syntax tree for the constrained, line-oriented Z-like notation.
#pragma once

#include <string>
#include <vector>

namespace zedmet::zspec {

// Identifier decoration: x, x', x?, x!
enum class Decoration { plain, primed, input, output };

inline const char* decoration_suffix(Decoration d) {
  switch (d) {
    case Decoration::primed: return "'";
    case Decoration::input: return "?";
    case Decoration::output: return "!";
    default: return "";
  }
}

struct IdentOccurrence {
  std::string base;
  Decoration decoration = Decoration::plain;
  int line = 0;
  int column = 0;
};

enum class ExprKind {
  conj,      // and (binary)
  disj,      // or (binary)
  implies,   // binary, right associative
  negation,  // not (unary)
  relation,  // =, /=, <, <=, >, >=, in, notin, subseteq (binary)
  binop,     // +, -, *, / (opaque arithmetic)
  unop,      // unary minus
  apply,     // f(e, ...) - opaque application, name is an occurrence
  set_display,  // { e, ... } - opaque construct
  ident,
  number,
};

// Term tree over identifier occurrences, literals and opaque applications.
struct PredExpr {
  ExprKind kind = ExprKind::number;
  // relation/binop operator text, identifier or applied-function base name,
  // or literal text depending on kind.
  std::string text;
  Decoration decoration = Decoration::plain;  // ident / apply name
  int line = 0;
  int column = 0;
  std::vector<PredExpr> children;
};

struct Declaration {
  std::string name;  // base name, without decoration
  Decoration decoration = Decoration::plain;
  std::string type_text;  // opaque
  int line = 0;
  std::string origin;  // schema that textually declared it
};

struct Predicate {
  PredExpr expr;
  int line = 0;
  std::string origin;       // schema the pred line was written in
  bool synthetic_xi = false;  // x' = x equalities added by xi expansion
};

enum class InclusionKind { delta, xi, includes };

inline const char* inclusion_keyword(InclusionKind k) {
  switch (k) {
    case InclusionKind::delta: return "delta";
    case InclusionKind::xi: return "xi";
    default: return "includes";
  }
}

struct Inclusion {
  InclusionKind kind = InclusionKind::includes;
  std::string target;
  int line = 0;
};

struct SchemaDef {
  std::string name;
  int line = 0;
  std::vector<Inclusion> inclusions;
  std::vector<Declaration> declarations;
  std::vector<Predicate> predicates;
};

struct Specification {
  std::string source_name;  // file label for diagnostics
  std::vector<std::string> given_sets;
  std::vector<SchemaDef> schemas;
  bool expanded = false;  // set once resolve_inclusions has run

  const SchemaDef* find_schema(const std::string& name) const {
    for (const auto& s : schemas)
      if (s.name == name) return &s;
    return nullptr;
  }
};

// --- structural equality, ignoring source positions -----------------------

inline bool ast_equal(const PredExpr& a, const PredExpr& b) {
  if (a.kind != b.kind || a.text != b.text || a.decoration != b.decoration ||
      a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!ast_equal(a.children[i], b.children[i])) return false;
  return true;
}

inline bool ast_equal(const Declaration& a, const Declaration& b) {
  return a.name == b.name && a.decoration == b.decoration &&
         a.type_text == b.type_text && a.origin == b.origin;
}

inline bool ast_equal(const Predicate& a, const Predicate& b) {
  return a.origin == b.origin && a.synthetic_xi == b.synthetic_xi &&
         ast_equal(a.expr, b.expr);
}

inline bool ast_equal(const SchemaDef& a, const SchemaDef& b) {
  if (a.name != b.name || a.inclusions.size() != b.inclusions.size() ||
      a.declarations.size() != b.declarations.size() ||
      a.predicates.size() != b.predicates.size())
    return false;
  for (std::size_t i = 0; i < a.inclusions.size(); ++i)
    if (a.inclusions[i].kind != b.inclusions[i].kind ||
        a.inclusions[i].target != b.inclusions[i].target)
      return false;
  for (std::size_t i = 0; i < a.declarations.size(); ++i)
    if (!ast_equal(a.declarations[i], b.declarations[i])) return false;
  for (std::size_t i = 0; i < a.predicates.size(); ++i)
    if (!ast_equal(a.predicates[i], b.predicates[i])) return false;
  return true;
}

inline bool ast_equal(const Specification& a, const Specification& b) {
  if (a.given_sets != b.given_sets || a.schemas.size() != b.schemas.size())
    return false;
  for (std::size_t i = 0; i < a.schemas.size(); ++i)
    if (!ast_equal(a.schemas[i], b.schemas[i])) return false;
  return true;
}

}  // namespace zedmet::zspec
