// callgraph.hpp - caller/callee graph over parsed units.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "zedmet/mil/ast.hpp"

namespace zedmet::mil {

struct CallGraph {
  std::set<std::string> vertices;  // unit names plus external callee names
  std::set<std::pair<std::string, std::string>> edges;  // (caller, callee)
  std::set<std::string> externals;  // callees with no definition

  std::set<std::string> callers_of(const std::string& name) const {
    std::set<std::string> out;
    for (const auto& [from, to] : edges)
      if (to == name) out.insert(from);
    return out;
  }
  std::set<std::string> callees_of(const std::string& name) const {
    std::set<std::string> out;
    for (const auto& [from, to] : edges)
      if (from == name) out.insert(to);
    return out;
  }
};

// Edge (A, B) iff A's body contains a call of B. Call multiplicity is kept
// on the units' call sites, not here.
inline CallGraph build_call_graph(const std::vector<CodeUnit>& units) {
  CallGraph g;
  std::set<std::string> defined;
  for (const auto& u : units) {
    g.vertices.insert(u.name);
    defined.insert(u.name);
  }
  for (const auto& u : units) {
    for (const auto& site : u.call_sites) {
      g.vertices.insert(site.callee);
      g.edges.insert({u.name, site.callee});
      if (!defined.count(site.callee)) g.externals.insert(site.callee);
    }
  }
  return g;
}

}  // namespace zedmet::mil
