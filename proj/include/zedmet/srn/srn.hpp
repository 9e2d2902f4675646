// srn.hpp - the Specification Relationship Net: prime vertices for every
// declaration and predicate conjunct, with reconstructed control and data
// dependency arcs.
//
// Reconstruction rules:
//   * each schema predicate is split at top-level `and` into conjunct
//     primes; each declared name yields one declaration prime
//   * primed/output occurrences are defs, plain/input occurrences are uses
//   * a guard is a predicate prime with no defs; every guard gets a control
//     arc to every non-guard predicate prime of the same schema
//   * declaration primes emit a data arc to every same-schema prime that
//     references the declared (name, decoration) in any role; def/use pairs
//     with matching decoration also connect
//   * an inter-schema arc (A, B, p, q, v) exists when p in A defs v' or v!,
//     q in B uses v plain, and v is declared in a schema reachable through
//     the inclusion lists of both A and B
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zedmet/common/error.hpp"
#include "zedmet/zspec/ast.hpp"
#include "zedmet/zspec/printer.hpp"

namespace zedmet::srn {

using zspec::Decoration;

struct Occurrence {
  std::string base;
  Decoration decoration = Decoration::plain;

  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

struct Prime {
  enum class Kind { declaration, predicate, xi_equality };

  int id = 0;               // index into Srn::primes once built
  std::string schema;
  Kind kind = Kind::predicate;
  bool is_guard = false;
  std::vector<Occurrence> defs;  // sorted, unique
  std::vector<Occurrence> uses;  // sorted, unique; decorations plain/input
  std::string label;             // rendered source text, for dumps
  int line = 0;

  bool defines(const std::string& base, Decoration d) const {
    return std::binary_search(defs.begin(), defs.end(), Occurrence{base, d});
  }
  bool uses_occurrence(const std::string& base, Decoration d) const {
    return std::binary_search(uses.begin(), uses.end(), Occurrence{base, d});
  }
  bool references(const std::string& base, Decoration d) const {
    return defines(base, d) || uses_occurrence(base, d);
  }
  std::set<std::string> use_bases() const {
    std::set<std::string> out;
    for (const auto& u : uses) out.insert(u.base);
    return out;
  }
};

struct ControlArc {
  int src = 0, dst = 0;
  friend auto operator<=>(const ControlArc&, const ControlArc&) = default;
};

struct DataArc {
  int src = 0, dst = 0;
  std::string var;  // base name
  friend auto operator<=>(const DataArc&, const DataArc&) = default;
};

struct InterSchemaArc {
  std::string src_schema, dst_schema;
  int src = 0, dst = 0;
  std::string var;
  friend auto operator<=>(const InterSchemaArc&, const InterSchemaArc&) =
      default;
};

struct Srn {
  std::vector<Prime> primes;  // grouped by schema, in specification order
  std::vector<ControlArc> control_arcs;
  std::vector<DataArc> data_arcs;
  std::vector<InterSchemaArc> inter_arcs;
  std::vector<std::string> schema_order;
  std::map<std::string, std::vector<int>> schema_primes;

  const std::vector<int>& primes_of(const std::string& schema) const {
    static const std::vector<int> empty;
    auto it = schema_primes.find(schema);
    return it == schema_primes.end() ? empty : it->second;
  }
};

namespace detail {

inline void collect_occurrences(const zspec::PredExpr& e,
                                std::vector<Occurrence>& defs,
                                std::vector<Occurrence>& uses) {
  if (e.kind == zspec::ExprKind::ident || e.kind == zspec::ExprKind::apply) {
    if (e.decoration == Decoration::primed ||
        e.decoration == Decoration::output)
      defs.push_back({e.text, e.decoration});
    else
      uses.push_back({e.text, e.decoration});
  }
  for (const auto& c : e.children) collect_occurrences(c, defs, uses);
}

inline void sort_unique(std::vector<Occurrence>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Splits a predicate term at top-level conjunctions.
inline void top_level_conjuncts(const zspec::PredExpr& e,
                                std::vector<const zspec::PredExpr*>& out) {
  if (e.kind == zspec::ExprKind::conj) {
    top_level_conjuncts(e.children[0], out);
    top_level_conjuncts(e.children[1], out);
  } else {
    out.push_back(&e);
  }
}

}  // namespace detail

// One prime per declared name, then one per predicate conjunct, in schema
// order. Ids are schema-local; build_srn re-bases them.
inline std::vector<Prime> split_primes(const zspec::SchemaDef& schema) {
  std::vector<Prime> primes;
  for (const auto& d : schema.declarations) {
    Prime p;
    p.id = static_cast<int>(primes.size());
    p.schema = schema.name;
    p.kind = Prime::Kind::declaration;
    p.defs = {{d.name, d.decoration}};
    p.label = "decl " + d.name + zspec::decoration_suffix(d.decoration);
    p.line = d.line;
    primes.push_back(std::move(p));
  }
  for (const auto& pred : schema.predicates) {
    std::vector<const zspec::PredExpr*> conjuncts;
    detail::top_level_conjuncts(pred.expr, conjuncts);
    for (const auto* term : conjuncts) {
      Prime p;
      p.id = static_cast<int>(primes.size());
      p.schema = schema.name;
      p.kind = pred.synthetic_xi ? Prime::Kind::xi_equality
                                 : Prime::Kind::predicate;
      detail::collect_occurrences(*term, p.defs, p.uses);
      detail::sort_unique(p.defs);
      detail::sort_unique(p.uses);
      p.is_guard = p.defs.empty();
      p.label = zspec::print_expr(*term);
      p.line = pred.line;
      primes.push_back(std::move(p));
    }
  }
  return primes;
}

namespace detail {

// Reflexive-transitive closure of the inclusion relation.
inline std::map<std::string, std::set<std::string>> inclusion_closure(
    const zspec::Specification& spec) {
  std::map<std::string, std::set<std::string>> closure;
  for (const auto& s : spec.schemas) closure[s.name].insert(s.name);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& s : spec.schemas) {
      auto& mine = closure[s.name];
      for (const auto& inc : s.inclusions) {
        auto it = closure.find(inc.target);
        if (it == closure.end()) continue;
        for (const auto& name : it->second)
          if (mine.insert(name).second) changed = true;
      }
    }
  }
  return closure;
}

}  // namespace detail

inline Srn build_srn(const zspec::Specification& spec) {
  if (!spec.expanded)
    throw Error(ErrorKind::out_of_range,
                "build_srn requires an inclusion-expanded specification");
  Srn net;
  for (const auto& schema : spec.schemas) {
    net.schema_order.push_back(schema.name);
    auto primes = split_primes(schema);
    auto& ids = net.schema_primes[schema.name];
    for (auto& p : primes) {
      p.id = static_cast<int>(net.primes.size());
      ids.push_back(p.id);
      net.primes.push_back(std::move(p));
    }
  }

  std::set<ControlArc> control;
  std::set<DataArc> data;
  for (const auto& schema : spec.schemas) {
    const auto& ids = net.schema_primes[schema.name];
    for (int pi : ids) {
      const Prime& p = net.primes[pi];
      for (int qi : ids) {
        if (pi == qi) continue;
        const Prime& q = net.primes[qi];
        // control: guard -> non-guard predicate prime
        if (p.is_guard && q.kind != Prime::Kind::declaration && !q.is_guard)
          control.insert({pi, qi});
        // data: def reaching a matching reference
        for (const auto& def : p.defs) {
          bool hit = q.uses_occurrence(def.base, def.decoration);
          if (!hit && p.kind == Prime::Kind::declaration)
            hit = q.references(def.base, def.decoration);
          if (hit) data.insert({pi, qi, def.base});
        }
      }
    }
  }
  net.control_arcs.assign(control.begin(), control.end());
  net.data_arcs.assign(data.begin(), data.end());

  // Inter-schema arcs: primed/output def in A feeding a plain use in B,
  // where the variable's declaring schema is reachable through the
  // inclusion lists of both A and B.
  auto closure = detail::inclusion_closure(spec);
  std::map<std::string, std::set<std::string>> declared_in;
  for (const auto& s : spec.schemas)
    for (const auto& d : s.declarations)
      if (d.origin == s.name) declared_in[d.name].insert(s.name);

  std::set<InterSchemaArc> inter;
  for (const auto& a : spec.schemas) {
    for (const auto& b : spec.schemas) {
      if (a.name == b.name) continue;
      const auto& ca = closure[a.name];
      const auto& cb = closure[b.name];
      for (int pi : net.schema_primes[a.name]) {
        const Prime& p = net.primes[pi];
        for (const auto& def : p.defs) {
          if (def.decoration != Decoration::primed &&
              def.decoration != Decoration::output)
            continue;
          auto decl_it = declared_in.find(def.base);
          if (decl_it == declared_in.end()) continue;
          bool shared = false;
          for (const auto& owner : decl_it->second)
            if (ca.count(owner) && cb.count(owner)) {
              shared = true;
              break;
            }
          if (!shared) continue;
          for (int qi : net.schema_primes[b.name]) {
            const Prime& q = net.primes[qi];
            if (q.uses_occurrence(def.base, Decoration::plain))
              inter.insert({a.name, b.name, pi, qi, def.base});
          }
        }
      }
    }
  }
  net.inter_arcs.assign(inter.begin(), inter.end());
  return net;
}

}  // namespace zedmet::srn
