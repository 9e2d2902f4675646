// parser.hpp - recursive descent parser for the Z-like notation.
//
// spec    := { "given" NAME {"," NAME} | schema }
// schema  := "schema" NAME { "delta" NAME | "xi" NAME | "includes" NAME }
//            { "decl" NAME{","NAME} ":" TYPETEXT }
//            { "pred" PREDEXPR }
//            "end"
//
// One construct per line; `--` starts a comment. Predicate expressions are
// infix over decorated identifiers with connectives and/or/implies/not,
// relations = /= < <= > >= in notin subseteq, applications f(e,...) and
// set displays {e,...} kept as opaque subtrees.
#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "zedmet/common/error.hpp"
#include "zedmet/common/text.hpp"
#include "zedmet/zspec/ast.hpp"
#include "zedmet/zspec/lexer.hpp"

namespace zedmet::zspec {

namespace detail {

class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, int line_no)
      : toks_(toks), line_(line_no) {}

  // Parses from the current position to end of line.
  PredExpr parse_to_eol(std::size_t start) {
    pos_ = start;
    PredExpr e = parse_implies();
    expect_eol();
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }

  bool at_keyword(std::string_view kw) const {
    return cur().kind == TokKind::keyword && cur().text == kw;
  }
  bool at_symbol(std::string_view sym) const {
    return cur().kind == TokKind::symbol && cur().text == sym;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    std::string got = cur().kind == TokKind::eol
                          ? "end of line"
                          : "'" + cur().text + "'";
    throw Error(ErrorKind::syntax,
                "line " + std::to_string(line_) + ": expected " + expected +
                    ", got " + got,
                line_);
  }

  void expect_eol() {
    if (cur().kind != TokKind::eol) fail("end of line");
  }

  PredExpr node(ExprKind k, std::string text, const Token& at) {
    PredExpr e;
    e.kind = k;
    e.text = std::move(text);
    e.line = at.line;
    e.column = at.column;
    return e;
  }

  PredExpr parse_implies() {
    PredExpr lhs = parse_or();
    if (at_keyword("implies")) {
      Token op = cur();
      ++pos_;
      PredExpr rhs = parse_implies();  // right associative
      PredExpr e = node(ExprKind::implies, "implies", op);
      e.children.push_back(std::move(lhs));
      e.children.push_back(std::move(rhs));
      return e;
    }
    return lhs;
  }

  PredExpr parse_or() {
    PredExpr lhs = parse_and();
    while (at_keyword("or")) {
      Token op = cur();
      ++pos_;
      PredExpr rhs = parse_and();
      PredExpr e = node(ExprKind::disj, "or", op);
      e.children.push_back(std::move(lhs));
      e.children.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  PredExpr parse_and() {
    PredExpr lhs = parse_not();
    while (at_keyword("and")) {
      Token op = cur();
      ++pos_;
      PredExpr rhs = parse_not();
      PredExpr e = node(ExprKind::conj, "and", op);
      e.children.push_back(std::move(lhs));
      e.children.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  PredExpr parse_not() {
    if (at_keyword("not")) {
      Token op = cur();
      ++pos_;
      PredExpr e = node(ExprKind::negation, "not", op);
      e.children.push_back(parse_not());
      return e;
    }
    return parse_relation();
  }

  bool at_relop() const {
    if (cur().kind == TokKind::symbol) {
      const std::string& s = cur().text;
      return s == "=" || s == "/=" || s == "<" || s == "<=" || s == ">" ||
             s == ">=";
    }
    if (cur().kind == TokKind::keyword) {
      const std::string& s = cur().text;
      return s == "in" || s == "notin" || s == "subseteq";
    }
    return false;
  }

  PredExpr parse_relation() {
    PredExpr lhs = parse_sum();
    if (at_relop()) {
      Token op = cur();
      ++pos_;
      PredExpr rhs = parse_sum();
      PredExpr e = node(ExprKind::relation, op.text, op);
      e.children.push_back(std::move(lhs));
      e.children.push_back(std::move(rhs));
      return e;  // relations do not chain
    }
    return lhs;
  }

  PredExpr parse_sum() {
    PredExpr lhs = parse_product();
    while (at_symbol("+") || at_symbol("-")) {
      Token op = cur();
      ++pos_;
      PredExpr rhs = parse_product();
      PredExpr e = node(ExprKind::binop, op.text, op);
      e.children.push_back(std::move(lhs));
      e.children.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  PredExpr parse_product() {
    PredExpr lhs = parse_atom();
    while (at_symbol("*") || at_symbol("/")) {
      Token op = cur();
      ++pos_;
      PredExpr rhs = parse_atom();
      PredExpr e = node(ExprKind::binop, op.text, op);
      e.children.push_back(std::move(lhs));
      e.children.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  PredExpr parse_atom() {
    if (at_symbol("-")) {
      Token op = cur();
      ++pos_;
      PredExpr e = node(ExprKind::unop, "-", op);
      e.children.push_back(parse_atom());
      return e;
    }
    if (cur().kind == TokKind::number) {
      PredExpr e = node(ExprKind::number, cur().text, cur());
      ++pos_;
      return e;
    }
    if (cur().kind == TokKind::ident) {
      Token id = cur();
      ++pos_;
      if (at_symbol("(")) {
        ++pos_;
        PredExpr e = node(ExprKind::apply, id.text, id);
        e.decoration = id.decoration;
        if (!at_symbol(")")) {
          e.children.push_back(parse_implies());
          while (at_symbol(",")) {
            ++pos_;
            e.children.push_back(parse_implies());
          }
        }
        if (!at_symbol(")")) fail("')'");
        ++pos_;
        return e;
      }
      PredExpr e = node(ExprKind::ident, id.text, id);
      e.decoration = id.decoration;
      return e;
    }
    if (at_symbol("(")) {
      ++pos_;
      PredExpr e = parse_implies();
      if (!at_symbol(")")) fail("')'");
      ++pos_;
      return e;
    }
    if (at_symbol("{")) {
      Token open = cur();
      ++pos_;
      PredExpr e = node(ExprKind::set_display, "{}", open);
      if (!at_symbol("}")) {
        e.children.push_back(parse_implies());
        while (at_symbol(",")) {
          ++pos_;
          e.children.push_back(parse_implies());
        }
      }
      if (!at_symbol("}")) fail("'}'");
      ++pos_;
      return e;
    }
    fail("an expression");
  }

  const std::vector<Token>& toks_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses a full specification source. Validates schema-name uniqueness and
// that every inclusion target names a schema of this specification.
inline Specification parse_specification(std::string_view source,
                                         std::string source_name = "<spec>") {
  Specification spec;
  spec.source_name = std::move(source_name);

  enum class Section { none, inclusions, decls, preds };
  SchemaDef* current = nullptr;
  Section section = Section::none;

  auto lines = text::split_lines(source);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    int line_no = static_cast<int>(li) + 1;
    auto stripped = strip_comment(lines[li]);
    if (text::trim(stripped).empty()) continue;
    auto toks = lex_line(stripped, line_no);
    const Token& head = toks[0];

    auto syntax_error = [&](const std::string& expected) -> void {
      throw Error(ErrorKind::syntax,
                  "line " + std::to_string(line_no) + ": expected " + expected,
                  line_no);
    };

    auto ident_at = [&](std::size_t idx, const char* what) -> const Token& {
      if (idx >= toks.size() || toks[idx].kind != TokKind::ident)
        syntax_error(what);
      if (toks[idx].decoration != Decoration::plain)
        syntax_error(std::string(what) + " without decoration");
      return toks[idx];
    };

    if (head.kind != TokKind::keyword)
      syntax_error("'given', 'schema' or a schema body line");

    if (head.text == "given") {
      if (current) syntax_error("'given' outside schema blocks");
      std::size_t i = 1;
      for (;;) {
        spec.given_sets.push_back(ident_at(i, "a set name").text);
        ++i;
        if (toks[i].kind == TokKind::eol) break;
        if (!(toks[i].kind == TokKind::symbol && toks[i].text == ","))
          syntax_error("',' or end of line");
        ++i;
      }
      continue;
    }

    if (head.text == "schema") {
      if (current) syntax_error("'end' before a new schema");
      const Token& name = ident_at(1, "a schema name");
      if (toks[2].kind != TokKind::eol) syntax_error("end of line");
      SchemaDef s;
      s.name = name.text;
      s.line = line_no;
      spec.schemas.push_back(std::move(s));
      current = &spec.schemas.back();
      section = Section::inclusions;
      continue;
    }

    if (head.text == "end") {
      if (!current) syntax_error("'schema' before 'end'");
      if (toks[1].kind != TokKind::eol) syntax_error("end of line");
      current = nullptr;
      section = Section::none;
      continue;
    }

    if (head.text == "delta" || head.text == "xi" || head.text == "includes") {
      if (!current || section != Section::inclusions)
        syntax_error("inclusions before 'decl'/'pred' lines");
      const Token& target = ident_at(1, "a schema name");
      if (toks[2].kind != TokKind::eol) syntax_error("end of line");
      Inclusion inc;
      inc.kind = head.text == "delta"   ? InclusionKind::delta
                 : head.text == "xi"    ? InclusionKind::xi
                                        : InclusionKind::includes;
      inc.target = target.text;
      inc.line = line_no;
      current->inclusions.push_back(inc);
      continue;
    }

    if (head.text == "decl") {
      if (!current || section == Section::preds)
        syntax_error("'decl' before 'pred' lines");
      section = Section::decls;
      // decl NAME{,NAME} : TYPETEXT  -- one declaration element per name
      std::vector<Token> names;
      std::size_t i = 1;
      for (;;) {
        if (toks[i].kind != TokKind::ident) syntax_error("a declared name");
        names.push_back(toks[i]);
        ++i;
        if (toks[i].kind == TokKind::symbol && toks[i].text == ",") {
          ++i;
          continue;
        }
        break;
      }
      if (!(toks[i].kind == TokKind::symbol && toks[i].text == ":"))
        syntax_error("':' after declared names");
      // TYPETEXT: opaque raw text after the colon
      std::size_t colon_off = static_cast<std::size_t>(toks[i].column);
      std::string type_text(text::trim(stripped.substr(colon_off)));
      if (type_text.empty()) syntax_error("a type after ':'");
      for (const Token& n : names) {
        Declaration d;
        d.name = n.text;
        d.decoration = n.decoration;
        d.type_text = type_text;
        d.line = line_no;
        d.origin = current->name;
        current->declarations.push_back(std::move(d));
      }
      continue;
    }

    if (head.text == "pred") {
      if (!current) syntax_error("'schema' before 'pred'");
      section = Section::preds;
      detail::ExprParser ep(toks, line_no);
      Predicate p;
      p.expr = ep.parse_to_eol(1);
      p.line = line_no;
      p.origin = current->name;
      current->predicates.push_back(std::move(p));
      continue;
    }

    syntax_error("'given', 'schema' or a schema body line");
  }

  if (current)
    throw Error(ErrorKind::syntax,
                "unexpected end of input: schema '" + current->name +
                    "' is missing 'end'",
                static_cast<int>(lines.size()));

  // Schema names must be unique.
  std::set<std::string> seen;
  for (const auto& s : spec.schemas)
    if (!seen.insert(s.name).second)
      throw Error(ErrorKind::duplicate_schema,
                  "duplicate schema '" + s.name + "'", s.line);

  // Every inclusion must resolve within this specification.
  for (const auto& s : spec.schemas)
    for (const auto& inc : s.inclusions)
      if (!spec.find_schema(inc.target))
        throw Error(ErrorKind::unknown_inclusion,
                    "schema '" + s.name + "' includes unknown schema '" +
                        inc.target + "'",
                    inc.line);

  return spec;
}

}  // namespace zedmet::zspec
