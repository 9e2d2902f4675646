// ast.hpp - parsed representation of MIL subprogram units.
#pragma once

#include <set>
#include <string>
#include <vector>

namespace zedmet::mil {

enum class ParamMode { in, out, in_out };

struct Param {
  std::string name;
  ParamMode mode = ParamMode::in;
  std::string type;
};

enum class LineClass { blank, comment, header, declarative, executable, terminator };

inline const char* line_class_name(LineClass c) {
  switch (c) {
    case LineClass::blank: return "blank";
    case LineClass::comment: return "comment";
    case LineClass::header: return "header";
    case LineClass::declarative: return "declarative";
    case LineClass::executable: return "executable";
    default: return "terminator";
  }
}

// goto -> label line; exit -> the `end loop` line of its loop
struct Jump {
  int src = 0;
  int dst = 0;
};

struct DecisionCounts {
  int if_count = 0;
  int elsif_count = 0;
  int while_count = 0;
  int for_count = 0;
  int exit_when_count = 0;
  int and_then_count = 0;
  int or_else_count = 0;
  std::vector<int> case_when_counts;  // one entry per case statement
};

struct Expr {
  enum class Kind { ident, number, binop, unop, call };
  Kind kind = Kind::number;
  std::string text;  // identifier, literal, operator, or callee name
  int line = 0;
  bool short_circuit = false;  // binop: `and then` / `or else`
  std::vector<Expr> children;
};

struct Stmt;

struct IfArm {
  Expr condition;
  std::vector<Stmt> body;
};

struct CaseArm {
  std::string choice;  // raw choice text ("others" or an expression)
  std::vector<Stmt> body;
};

struct Stmt {
  enum class Kind {
    assign,     // name := args[0]
    call,       // name(args...)
    if_stmt,    // arms[0] = if, arms[1..] = elsif, else_body
    while_stmt, // args[0] condition, body
    for_stmt,   // name loop var, args[0..1] range, body
    loop_stmt,  // body
    case_stmt,  // args[0] selector, case_arms
    return_stmt,
    goto_stmt,  // name = label
    label,      // name
    exit_stmt,  // has_when, args[0] condition if any
    null_stmt,
  };
  Kind kind = Kind::null_stmt;
  int line = 0;
  std::string name;
  std::vector<Expr> args;
  std::vector<IfArm> arms;
  std::vector<Stmt> body;
  std::vector<CaseArm> case_arms;
  bool has_when = false;
};

struct CallSite {
  std::string callee;
  int line = 0;
  // argument expressions that are bare identifiers; empty string for
  // anything more complex. Used for out-parameter write tracking.
  std::vector<std::string> ident_args;
};

struct CodeUnit {
  std::string name;
  bool is_function = false;
  std::string return_type;
  std::vector<Param> params;

  std::string file;
  int first_line = 0;  // subprogram header line
  int begin_line = 0;  // the `begin` line
  int last_line = 0;   // the closing `end ...;` line
  std::vector<LineClass> line_classes;   // one per span line
  std::vector<std::string> source_lines;  // raw span text

  std::vector<Jump> jumps;
  DecisionCounts decisions;
  std::vector<CallSite> call_sites;
  std::set<std::string> global_reads;
  std::set<std::string> global_writes;
  std::set<std::string> locals;  // params, declared locals, loop variables

  std::vector<Stmt> body;  // statement tree (declarations are not kept)

  int span() const { return last_line - first_line + 1; }

  std::set<std::string> distinct_callees() const {
    std::set<std::string> out;
    for (const auto& c : call_sites) out.insert(c.callee);
    return out;
  }

  // Rebuilds the unit's physical source text.
  std::string pretty_print() const {
    std::string out;
    for (const auto& line : source_lines) {
      out += line;
      out += '\n';
    }
    return out;
  }
};

}  // namespace zedmet::mil
