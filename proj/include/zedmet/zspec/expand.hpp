// expand.hpp - delta/xi/includes expansion.
//
// Expansion rules:
//   delta T    - imports T's (expanded) declarations; every plain one is
//                additionally imported in primed form.
//   xi T       - as delta, plus one synthetic equality `v' = v` per state
//                variable (plain declaration) of T.
//   includes T - imports T's (expanded) declarations and predicates as-is.
// Imported elements keep the origin of the schema that textually declared
// them; identical (name, decoration, type) imports merge. The pass is
// idempotent: imported and synthetic elements are rebuilt from scratch on
// every run.
#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zedmet/common/error.hpp"
#include "zedmet/zspec/ast.hpp"

namespace zedmet::zspec {

namespace detail {

inline PredExpr make_xi_equality(const std::string& base, int line) {
  PredExpr lhs;
  lhs.kind = ExprKind::ident;
  lhs.text = base;
  lhs.decoration = Decoration::primed;
  lhs.line = line;
  PredExpr rhs = lhs;
  rhs.decoration = Decoration::plain;
  PredExpr eq;
  eq.kind = ExprKind::relation;
  eq.text = "=";
  eq.line = line;
  eq.children.push_back(std::move(lhs));
  eq.children.push_back(std::move(rhs));
  return eq;
}

}  // namespace detail

inline Specification resolve_inclusions(const Specification& input) {
  Specification spec = input;
  spec.expanded = false;

  // Strip everything a previous expansion added, keeping the pass idempotent.
  for (auto& s : spec.schemas) {
    std::vector<Declaration> own;
    for (auto& d : s.declarations) {
      if (d.origin.empty()) d.origin = s.name;
      if (d.origin == s.name) own.push_back(d);
    }
    s.declarations = std::move(own);
    std::vector<Predicate> own_preds;
    for (auto& p : s.predicates) {
      if (p.origin.empty()) p.origin = s.name;
      if (p.origin == s.name && !p.synthetic_xi) own_preds.push_back(p);
    }
    s.predicates = std::move(own_preds);
  }

  std::map<std::string, SchemaDef*> by_name;
  for (auto& s : spec.schemas) by_name[s.name] = &s;

  // DFS over the inclusion graph; 0 = unvisited, 1 = on stack, 2 = done.
  std::map<std::string, int> state;
  std::vector<std::string> path;

  auto expand = [&](auto&& self, SchemaDef& schema) -> void {
    if (state[schema.name] == 2) return;
    if (state[schema.name] == 1) {
      std::string cycle;
      bool in_cycle = false;
      for (const auto& n : path) {
        if (n == schema.name) in_cycle = true;
        if (in_cycle) cycle += n + " -> ";
      }
      cycle += schema.name;
      throw Error(ErrorKind::cyclic_inclusion,
                  "cyclic inclusion: " + cycle, schema.line);
    }
    state[schema.name] = 1;
    path.push_back(schema.name);

    std::vector<Declaration> imported;
    std::vector<Predicate> imported_preds;
    for (const auto& inc : schema.inclusions) {
      auto it = by_name.find(inc.target);
      if (it == by_name.end())
        throw Error(ErrorKind::unknown_inclusion,
                    "schema '" + schema.name + "' includes unknown schema '" +
                        inc.target + "'",
                    inc.line);
      SchemaDef& target = *it->second;
      self(self, target);

      if (inc.kind == InclusionKind::includes) {
        for (const auto& d : target.declarations) imported.push_back(d);
        for (const auto& p : target.predicates) imported_preds.push_back(p);
        continue;
      }
      // delta / xi
      for (const auto& d : target.declarations) {
        imported.push_back(d);
        if (d.decoration == Decoration::plain) {
          Declaration primed = d;
          primed.decoration = Decoration::primed;
          imported.push_back(std::move(primed));
        }
      }
      if (inc.kind == InclusionKind::xi) {
        for (const auto& d : target.declarations) {
          if (d.decoration != Decoration::plain) continue;
          Predicate eq;
          eq.expr = detail::make_xi_equality(d.name, inc.line);
          eq.line = inc.line;
          eq.origin = schema.name;
          eq.synthetic_xi = true;
          imported_preds.push_back(std::move(eq));
        }
      }
    }

    // Imports precede own elements; identical re-declarations merge.
    std::vector<Declaration> merged;
    std::set<std::pair<std::string, Decoration>> seen;
    auto add_decl = [&](const Declaration& d) {
      auto key = std::make_pair(d.name, d.decoration);
      if (seen.count(key)) {
        for (const auto& prev : merged)
          if (prev.name == d.name && prev.decoration == d.decoration &&
              prev.type_text != d.type_text)
            throw Error(ErrorKind::duplicate_declaration,
                        "schema '" + schema.name + "' declares '" + d.name +
                            decoration_suffix(d.decoration) +
                            "' twice with different types",
                        d.line);
        return;
      }
      seen.insert(key);
      merged.push_back(d);
    };
    for (const auto& d : imported) add_decl(d);
    for (const auto& d : schema.declarations) add_decl(d);
    schema.declarations = std::move(merged);

    std::vector<Predicate> preds = std::move(imported_preds);
    for (auto& p : schema.predicates) preds.push_back(std::move(p));
    schema.predicates = std::move(preds);

    path.pop_back();
    state[schema.name] = 2;
  };

  for (auto& s : spec.schemas) expand(expand, s);
  spec.expanded = true;
  return spec;
}

}  // namespace zedmet::zspec
