// parser.hpp - recursive descent parser for MIL, an Ada-flavoured mini
// imperative language.
//
// file  := { globaldecl } { subprog }
// subprog := ("procedure" NAME ["(" params ")"]
//            | "function" NAME ["(" params ")"] "return" NAME)
//            "is" { decl } "begin" { stmt } "end" [NAME] ";"
// params := param { ";" param } ; param := NAME ":" ["in"|"out"|"in out"] NAME
// stmt  := NAME ":=" expr ";" | if | while | for | loop | case
//        | NAME "(" [args] ")" ";" | "return" [expr] ";"
//        | "goto" NAME ";" | "<<" NAME ">>" | "exit" ["when" expr] ";"
//        | "null" ";"
//
// Jumps: goto resolves to its label's line, exit to the `end loop` line of
// its innermost loop. Zero-length jumps (source = target line) are not
// recorded. Decision constructs are tallied while parsing.
#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "zedmet/common/error.hpp"
#include "zedmet/common/text.hpp"
#include "zedmet/mil/ast.hpp"
#include "zedmet/mil/lexer.hpp"

namespace zedmet::mil {

struct GlobalDecl {
  std::string name;
  std::string type;
  int line = 0;
};

struct ParsedFile {
  std::string file;
  std::vector<GlobalDecl> globals;
  std::vector<CodeUnit> units;
};

namespace detail {

class MilParser {
 public:
  MilParser(const std::vector<std::string>& lines, std::string file)
      : lines_(lines), file_(std::move(file)), toks_(lex_mil(lines)) {}

  ParsedFile parse_file() {
    ParsedFile out;
    out.file = file_;
    while (!at_eof()) {
      if (at_keyword("procedure") || at_keyword("function")) {
        out.units.push_back(parse_subprogram());
      } else if (cur().kind == MilTok::ident) {
        parse_global_decl(out.globals);
      } else {
        fail("'procedure', 'function' or a global declaration");
      }
    }
    analyze_accesses(out);
    return out;
  }

 private:
  // --- token plumbing ------------------------------------------------------

  const MilToken& cur() const { return toks_[pos_]; }
  const MilToken& peek(std::size_t n = 1) const {
    std::size_t i = pos_ + n;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at_eof() const { return cur().kind == MilTok::eof; }
  bool at_keyword(std::string_view kw) const {
    return cur().kind == MilTok::keyword && cur().text == kw;
  }
  bool at_symbol(std::string_view sym) const {
    return cur().kind == MilTok::symbol && cur().text == sym;
  }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& expected) const {
    std::string got = at_eof() ? "end of input" : "'" + cur().text + "'";
    throw Error(ErrorKind::syntax,
                file_ + ":" + std::to_string(cur().line) + ": expected " +
                    expected + ", got " + got,
                cur().line);
  }

  MilToken expect_ident(const char* what) {
    if (cur().kind != MilTok::ident) fail(what);
    MilToken t = cur();
    advance();
    return t;
  }
  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail("'" + std::string(kw) + "'");
    advance();
  }
  void expect_symbol(std::string_view sym) {
    if (!at_symbol(sym)) fail("'" + std::string(sym) + "'");
    advance();
  }

  // --- declarations --------------------------------------------------------

  void parse_global_decl(std::vector<GlobalDecl>& globals) {
    std::vector<MilToken> names;
    names.push_back(expect_ident("a global name"));
    while (at_symbol(",")) {
      advance();
      names.push_back(expect_ident("a global name"));
    }
    expect_symbol(":");
    MilToken type = expect_ident("a type name");
    if (at_symbol(":=")) {
      advance();
      parse_expr();  // initialiser value is not attributed to any unit
    }
    expect_symbol(";");
    for (const auto& n : names)
      globals.push_back({n.text, type.text, n.line});
  }

  // --- subprograms ---------------------------------------------------------

  CodeUnit parse_subprogram() {
    CodeUnit unit;
    unit.file = file_;
    unit.is_function = at_keyword("function");
    unit.first_line = cur().line;
    advance();
    unit.name = expect_ident("a subprogram name").text;
    if (at_symbol("(")) {
      advance();
      if (!at_symbol(")")) {
        parse_param(unit);
        while (at_symbol(";")) {
          advance();
          parse_param(unit);
        }
      }
      expect_symbol(")");
    }
    if (unit.is_function) {
      expect_keyword("return");
      unit.return_type = expect_ident("a return type").text;
    }
    int is_line = cur().line;
    expect_keyword("is");

    for (const auto& p : unit.params) unit.locals.insert(p.name);
    current_ = &unit;  // decisions in initialisers belong to the unit

    // declarative region
    while (cur().kind == MilTok::ident) {
      std::vector<MilToken> names;
      names.push_back(expect_ident("a local name"));
      while (at_symbol(",")) {
        advance();
        names.push_back(expect_ident("a local name"));
      }
      expect_symbol(":");
      expect_ident("a type name");
      if (at_symbol(":=")) {
        advance();
        parse_expr();
      }
      expect_symbol(";");
      for (const auto& n : names) unit.locals.insert(n.text);
    }

    unit.begin_line = cur().line;
    expect_keyword("begin");

    labels_.clear();
    pending_gotos_.clear();
    loop_exits_.clear();
    unit.body = parse_stmts();
    current_ = nullptr;

    if (!at_keyword("end")) fail("'end'");
    advance();
    if (cur().kind == MilTok::ident) {
      if (cur().text != unit.name)
        fail("'" + unit.name + "' after 'end'");
      advance();
    }
    if (!at_symbol(";")) fail("';'");
    unit.last_line = cur().line;
    advance();

    // goto targets resolve against the unit's labels
    for (const auto& [label_tok, src_line] : pending_gotos_) {
      auto it = labels_.find(label_tok);
      if (it == labels_.end())
        throw Error(ErrorKind::unresolved_label,
                    file_ + ":" + std::to_string(src_line) +
                        ": goto to undefined label '" + label_tok + "'",
                    src_line);
      if (src_line != it->second)
        unit.jumps.push_back({src_line, it->second});
    }

    classify_lines(unit, is_line);
    return unit;
  }

  void parse_param(CodeUnit& unit) {
    Param p;
    p.name = expect_ident("a parameter name").text;
    expect_symbol(":");
    p.mode = ParamMode::in;
    if (at_keyword("in")) {
      advance();
      if (at_keyword("out")) {
        advance();
        p.mode = ParamMode::in_out;
      }
    } else if (at_keyword("out")) {
      advance();
      p.mode = ParamMode::out;
    }
    p.type = expect_ident("a parameter type").text;
    unit.params.push_back(std::move(p));
  }

  // --- statements ----------------------------------------------------------

  // Parses statements until a terminating keyword (end/elsif/else/when) is
  // next; the caller consumes the terminator.
  std::vector<Stmt> parse_stmts() {
    std::vector<Stmt> stmts;
    for (;;) {
      if (at_keyword("end") || at_keyword("elsif") || at_keyword("else") ||
          at_keyword("when") || at_eof())
        return stmts;
      stmts.push_back(parse_stmt());
    }
  }

  Stmt parse_stmt() {
    Stmt s;
    s.line = cur().line;
    if (at_keyword("if")) return parse_if();
    if (at_keyword("while")) return parse_while();
    if (at_keyword("for")) return parse_for();
    if (at_keyword("loop")) return parse_loop();
    if (at_keyword("case")) return parse_case();
    if (at_keyword("return")) {
      s.kind = Stmt::Kind::return_stmt;
      advance();
      if (!at_symbol(";")) s.args.push_back(parse_expr());
      expect_symbol(";");
      return s;
    }
    if (at_keyword("goto")) {
      s.kind = Stmt::Kind::goto_stmt;
      advance();
      MilToken label = expect_ident("a label name");
      s.name = label.text;
      expect_symbol(";");
      pending_gotos_.emplace_back(label.text, s.line);
      return s;
    }
    if (at_symbol("<<")) {
      s.kind = Stmt::Kind::label;
      advance();
      MilToken label = expect_ident("a label name");
      s.name = label.text;
      expect_symbol(">>");
      if (labels_.count(label.text))
        throw Error(ErrorKind::syntax,
                    file_ + ":" + std::to_string(s.line) +
                        ": duplicate label '" + label.text + "'",
                    s.line);
      labels_[label.text] = s.line;
      return s;
    }
    if (at_keyword("exit")) {
      s.kind = Stmt::Kind::exit_stmt;
      advance();
      if (loop_exits_.empty())
        throw Error(ErrorKind::unresolved_exit,
                    file_ + ":" + std::to_string(s.line) +
                        ": 'exit' outside of a loop",
                    s.line);
      if (at_keyword("when")) {
        advance();
        s.has_when = true;
        ++current_->decisions.exit_when_count;
        s.args.push_back(parse_expr());
      }
      expect_symbol(";");
      loop_exits_.back().push_back(s.line);
      return s;
    }
    if (at_keyword("null")) {
      s.kind = Stmt::Kind::null_stmt;
      advance();
      expect_symbol(";");
      return s;
    }
    if (cur().kind == MilTok::ident) {
      MilToken name = cur();
      advance();
      if (at_symbol(":=")) {
        advance();
        s.kind = Stmt::Kind::assign;
        s.name = name.text;
        s.args.push_back(parse_expr());
        expect_symbol(";");
        return s;
      }
      if (at_symbol("(")) {
        advance();
        s.kind = Stmt::Kind::call;
        s.name = name.text;
        if (!at_symbol(")")) {
          s.args.push_back(parse_expr());
          while (at_symbol(",")) {
            advance();
            s.args.push_back(parse_expr());
          }
        }
        expect_symbol(")");
        expect_symbol(";");
        return s;
      }
      fail("':=' or '(' after identifier");
    }
    fail("a statement");
  }

  Stmt parse_if() {
    Stmt s;
    s.kind = Stmt::Kind::if_stmt;
    s.line = cur().line;
    expect_keyword("if");
    ++current_->decisions.if_count;
    IfArm arm;
    arm.condition = parse_expr();
    expect_keyword("then");
    arm.body = parse_stmts();
    s.arms.push_back(std::move(arm));
    while (at_keyword("elsif")) {
      advance();
      ++current_->decisions.elsif_count;
      IfArm elif;
      elif.condition = parse_expr();
      expect_keyword("then");
      elif.body = parse_stmts();
      s.arms.push_back(std::move(elif));
    }
    if (at_keyword("else")) {
      advance();
      s.body = parse_stmts();  // else branch
    }
    expect_keyword("end");
    expect_keyword("if");
    expect_symbol(";");
    return s;
  }

  Stmt parse_while() {
    Stmt s;
    s.kind = Stmt::Kind::while_stmt;
    s.line = cur().line;
    expect_keyword("while");
    ++current_->decisions.while_count;
    s.args.push_back(parse_expr());
    parse_loop_body(s);
    return s;
  }

  Stmt parse_for() {
    Stmt s;
    s.kind = Stmt::Kind::for_stmt;
    s.line = cur().line;
    expect_keyword("for");
    ++current_->decisions.for_count;
    MilToken var = expect_ident("a loop variable");
    s.name = var.text;
    current_->locals.insert(var.text);
    expect_keyword("in");
    s.args.push_back(parse_expr());
    expect_symbol("..");
    s.args.push_back(parse_expr());
    parse_loop_body(s);
    return s;
  }

  Stmt parse_loop() {
    Stmt s;
    s.kind = Stmt::Kind::loop_stmt;
    s.line = cur().line;
    parse_loop_body(s);
    return s;
  }

  // Consumes "loop" { stmt } "end" "loop" ";" and resolves pending exits.
  void parse_loop_body(Stmt& s) {
    expect_keyword("loop");
    loop_exits_.emplace_back();
    s.body = parse_stmts();
    if (!at_keyword("end")) fail("'end loop'");
    int end_line = cur().line;
    advance();
    expect_keyword("loop");
    expect_symbol(";");
    for (int exit_line : loop_exits_.back())
      if (exit_line != end_line)
        current_->jumps.push_back({exit_line, end_line});
    loop_exits_.pop_back();
  }

  Stmt parse_case() {
    Stmt s;
    s.kind = Stmt::Kind::case_stmt;
    s.line = cur().line;
    expect_keyword("case");
    s.args.push_back(parse_expr());
    expect_keyword("is");
    int whens = 0;
    while (at_keyword("when")) {
      advance();
      ++whens;
      CaseArm arm;
      if (at_keyword("others")) {
        arm.choice = "others";
        advance();
      } else {
        Expr choice = parse_expr();
        arm.choice = choice.text;
        s.args.push_back(std::move(choice));  // keep for access analysis
      }
      expect_symbol("=>");
      arm.body = parse_stmts();
      s.case_arms.push_back(std::move(arm));
    }
    expect_keyword("end");
    expect_keyword("case");
    expect_symbol(";");
    current_->decisions.case_when_counts.push_back(whens);
    return s;
  }

  // --- expressions ---------------------------------------------------------

  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr lhs = parse_and();
    while (at_keyword("or")) {
      Expr op;
      op.kind = Expr::Kind::binop;
      op.line = cur().line;
      advance();
      if (at_keyword("else")) {
        advance();
        op.text = "or else";
        op.short_circuit = true;
        if (current_) ++current_->decisions.or_else_count;
      } else {
        op.text = "or";
      }
      op.children.push_back(std::move(lhs));
      op.children.push_back(parse_and());
      lhs = std::move(op);
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_rel();
    while (at_keyword("and")) {
      Expr op;
      op.kind = Expr::Kind::binop;
      op.line = cur().line;
      advance();
      if (at_keyword("then")) {
        advance();
        op.text = "and then";
        op.short_circuit = true;
        if (current_) ++current_->decisions.and_then_count;
      } else {
        op.text = "and";
      }
      op.children.push_back(std::move(lhs));
      op.children.push_back(parse_rel());
      lhs = std::move(op);
    }
    return lhs;
  }

  bool at_relop() const {
    if (cur().kind != MilTok::symbol) return false;
    const std::string& s = cur().text;
    return s == "=" || s == "/=" || s == "<" || s == "<=" || s == ">" ||
           s == ">=";
  }

  Expr parse_rel() {
    Expr lhs = parse_add();
    if (at_relop()) {
      Expr op;
      op.kind = Expr::Kind::binop;
      op.text = cur().text;
      op.line = cur().line;
      advance();
      op.children.push_back(std::move(lhs));
      op.children.push_back(parse_add());
      return op;
    }
    return lhs;
  }

  Expr parse_add() {
    Expr lhs = parse_mul();
    while (at_symbol("+") || at_symbol("-")) {
      Expr op;
      op.kind = Expr::Kind::binop;
      op.text = cur().text;
      op.line = cur().line;
      advance();
      op.children.push_back(std::move(lhs));
      op.children.push_back(parse_mul());
      lhs = std::move(op);
    }
    return lhs;
  }

  Expr parse_mul() {
    Expr lhs = parse_unary();
    while (at_symbol("*") || at_symbol("/") || at_keyword("mod")) {
      Expr op;
      op.kind = Expr::Kind::binop;
      op.text = cur().text;
      op.line = cur().line;
      advance();
      op.children.push_back(std::move(lhs));
      op.children.push_back(parse_unary());
      lhs = std::move(op);
    }
    return lhs;
  }

  Expr parse_unary() {
    if (at_symbol("-") || at_keyword("not")) {
      Expr op;
      op.kind = Expr::Kind::unop;
      op.text = cur().text;
      op.line = cur().line;
      advance();
      op.children.push_back(parse_unary());
      return op;
    }
    return parse_primary();
  }

  Expr parse_primary() {
    if (cur().kind == MilTok::number) {
      Expr e;
      e.kind = Expr::Kind::number;
      e.text = cur().text;
      e.line = cur().line;
      advance();
      return e;
    }
    if (cur().kind == MilTok::ident) {
      Expr e;
      e.text = cur().text;
      e.line = cur().line;
      advance();
      if (at_symbol("(")) {
        advance();
        e.kind = Expr::Kind::call;
        if (!at_symbol(")")) {
          e.children.push_back(parse_expr());
          while (at_symbol(",")) {
            advance();
            e.children.push_back(parse_expr());
          }
        }
        expect_symbol(")");
      } else {
        e.kind = Expr::Kind::ident;
      }
      return e;
    }
    if (at_symbol("(")) {
      advance();
      Expr e = parse_expr();
      expect_symbol(")");
      return e;
    }
    fail("an expression");
  }

  // --- line classification -------------------------------------------------

  void classify_lines(CodeUnit& unit, int is_line) const {
    unit.line_classes.clear();
    unit.source_lines.clear();
    for (int line = unit.first_line; line <= unit.last_line; ++line) {
      const std::string& raw = lines_[static_cast<std::size_t>(line - 1)];
      unit.source_lines.push_back(raw);
      auto trimmed = text::trim(raw);
      LineClass c;
      if (trimmed.empty())
        c = LineClass::blank;
      else if (text::starts_with(trimmed, "--"))
        c = LineClass::comment;
      else if (line <= is_line || line == unit.begin_line)
        c = LineClass::header;
      else if (line == unit.last_line)
        c = LineClass::terminator;
      else if (line < unit.begin_line)
        c = LineClass::declarative;
      else
        c = LineClass::executable;
      unit.line_classes.push_back(c);
    }
  }

  // --- global access analysis ---------------------------------------------

  void analyze_accesses(ParsedFile& file) const {
    std::set<std::string> globals;
    for (const auto& g : file.globals) globals.insert(g.name);
    std::map<std::string, const CodeUnit*> units_by_name;
    for (const auto& u : file.units) units_by_name[u.name] = &u;
    for (auto& unit : file.units) {
      Walker w{globals, units_by_name, unit};
      for (const auto& s : unit.body) w.walk_stmt(s);
    }
  }

  struct Walker {
    const std::set<std::string>& globals;
    const std::map<std::string, const CodeUnit*>& units_by_name;
    CodeUnit& unit;

    bool is_global(const std::string& name) const {
      return !unit.locals.count(name) && globals.count(name) > 0;
    }

    void read(const std::string& name) {
      if (is_global(name)) unit.global_reads.insert(name);
    }

    void walk_expr(const Expr& e) {
      switch (e.kind) {
        case Expr::Kind::ident:
          read(e.text);
          break;
        case Expr::Kind::call:
          walk_call(e.text, e.line, e.children);
          break;
        default:
          for (const auto& c : e.children) walk_expr(c);
      }
    }

    void walk_call(const std::string& callee, int line,
                   const std::vector<Expr>& args) {
      CallSite site;
      site.callee = callee;
      site.line = line;
      for (const auto& a : args)
        site.ident_args.push_back(a.kind == Expr::Kind::ident ? a.text : "");
      unit.call_sites.push_back(site);

      auto it = units_by_name.find(callee);
      const CodeUnit* target =
          it == units_by_name.end() ? nullptr : it->second;
      for (std::size_t i = 0; i < args.size(); ++i) {
        ParamMode mode = target && i < target->params.size()
                             ? target->params[i].mode
                             : ParamMode::in;
        const Expr& a = args[i];
        if (a.kind == Expr::Kind::ident && is_global(a.text)) {
          if (mode == ParamMode::out) {
            unit.global_writes.insert(a.text);
          } else if (mode == ParamMode::in_out) {
            unit.global_reads.insert(a.text);
            unit.global_writes.insert(a.text);
          } else {
            unit.global_reads.insert(a.text);
          }
        } else {
          walk_expr(a);
        }
      }
    }

    void walk_stmt(const Stmt& s) {
      switch (s.kind) {
        case Stmt::Kind::assign:
          if (is_global(s.name)) unit.global_writes.insert(s.name);
          walk_expr(s.args[0]);
          break;
        case Stmt::Kind::call:
          walk_call(s.name, s.line, s.args);
          break;
        case Stmt::Kind::if_stmt:
          for (const auto& arm : s.arms) {
            walk_expr(arm.condition);
            for (const auto& b : arm.body) walk_stmt(b);
          }
          for (const auto& b : s.body) walk_stmt(b);
          break;
        default:
          for (const auto& e : s.args) walk_expr(e);
          for (const auto& b : s.body) walk_stmt(b);
          for (const auto& arm : s.case_arms)
            for (const auto& b : arm.body) walk_stmt(b);
          break;
      }
    }
  };

  const std::vector<std::string>& lines_;
  std::string file_;
  std::vector<MilToken> toks_;
  std::size_t pos_ = 0;

  CodeUnit* current_ = nullptr;
  std::map<std::string, int> labels_;
  std::vector<std::pair<std::string, int>> pending_gotos_;
  std::vector<std::vector<int>> loop_exits_;
};

}  // namespace detail

inline ParsedFile parse_mil_file(std::string_view source,
                                 std::string file = "<code>") {
  auto lines = text::split_lines(source);
  detail::MilParser parser(lines, std::move(file));
  return parser.parse_file();
}

// All subprogram units of one source text.
inline std::vector<CodeUnit> parse_code(std::string_view source,
                                        std::string file = "<code>") {
  return parse_mil_file(source, std::move(file)).units;
}

}  // namespace zedmet::mil
