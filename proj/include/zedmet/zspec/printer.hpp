// printer.hpp - canonical text rendering of a specification AST.
//
// Printing a parsed specification and re-parsing the result reproduces the
// same AST. Elements brought in by inclusion expansion are not printed
// (they are reproduced by the inclusion lines themselves).
#pragma once

#include <string>

#include "zedmet/zspec/ast.hpp"

namespace zedmet::zspec {

namespace detail {

// Binding strength used to decide parenthesisation; larger binds tighter.
inline int expr_level(const PredExpr& e) {
  switch (e.kind) {
    case ExprKind::implies: return 1;
    case ExprKind::disj: return 2;
    case ExprKind::conj: return 3;
    case ExprKind::negation: return 4;
    case ExprKind::relation: return 5;
    case ExprKind::binop: return e.text == "*" || e.text == "/" ? 7 : 6;
    case ExprKind::unop: return 8;
    default: return 9;
  }
}

inline void print_expr(const PredExpr& e, int parent_level, bool right_side,
                       std::string& out) {
  int level = expr_level(e);
  bool parens = level < parent_level ||
                (level == parent_level && right_side &&
                 (e.kind == ExprKind::disj || e.kind == ExprKind::conj ||
                  e.kind == ExprKind::binop || e.kind == ExprKind::implies));
  if (parens) out += '(';
  switch (e.kind) {
    case ExprKind::conj:
    case ExprKind::disj:
    case ExprKind::implies: {
      // implies is right associative: parenthesise a left implies child
      bool left_right_side = e.kind == ExprKind::implies;
      print_expr(e.children[0], level, left_right_side, out);
      out += ' ';
      out += e.text;
      out += ' ';
      print_expr(e.children[1], level, e.kind != ExprKind::implies, out);
      break;
    }
    case ExprKind::relation:
    case ExprKind::binop:
      print_expr(e.children[0], level, false, out);
      out += ' ';
      out += e.text;
      out += ' ';
      print_expr(e.children[1], level, true, out);
      break;
    case ExprKind::negation:
      out += "not ";
      print_expr(e.children[0], level, false, out);
      break;
    case ExprKind::unop:
      // parenthesise any non-atom child; "--" would lex as a comment
      out += '-';
      print_expr(e.children[0], 9, false, out);
      break;
    case ExprKind::apply: {
      out += e.text;
      out += decoration_suffix(e.decoration);
      out += '(';
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += ", ";
        print_expr(e.children[i], 0, false, out);
      }
      out += ')';
      break;
    }
    case ExprKind::set_display: {
      out += '{';
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += ", ";
        print_expr(e.children[i], 0, false, out);
      }
      out += '}';
      break;
    }
    case ExprKind::ident:
      out += e.text;
      out += decoration_suffix(e.decoration);
      break;
    case ExprKind::number:
      out += e.text;
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string print_expr(const PredExpr& e) {
  std::string out;
  detail::print_expr(e, 0, false, out);
  return out;
}

inline std::string print_specification(const Specification& spec) {
  std::string out;
  if (!spec.given_sets.empty()) {
    out += "given ";
    for (std::size_t i = 0; i < spec.given_sets.size(); ++i) {
      if (i) out += ", ";
      out += spec.given_sets[i];
    }
    out += '\n';
  }
  for (const auto& s : spec.schemas) {
    if (!out.empty()) out += '\n';
    out += "schema " + s.name + "\n";
    for (const auto& inc : s.inclusions)
      out += std::string("  ") + inclusion_keyword(inc.kind) + " " +
             inc.target + "\n";
    for (const auto& d : s.declarations) {
      if (d.origin != s.name) continue;  // imported by expansion
      out += "  decl " + d.name + decoration_suffix(d.decoration) + " : " +
             d.type_text + "\n";
    }
    for (const auto& p : s.predicates) {
      if (p.origin != s.name || p.synthetic_xi) continue;
      out += "  pred " + print_expr(p.expr) + "\n";
    }
    out += "end\n";
  }
  return out;
}

}  // namespace zedmet::zspec
