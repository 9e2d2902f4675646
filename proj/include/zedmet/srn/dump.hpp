// dump.hpp - Graphviz rendering of an SRN, for inspection.
#pragma once

#include <string>

#include "zedmet/srn/srn.hpp"

namespace zedmet::srn {

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

inline std::string dump_dot(const Srn& net) {
  std::string out = "digraph srn {\n  rankdir=LR;\n";
  int cluster = 0;
  for (const auto& schema : net.schema_order) {
    out += "  subgraph cluster_" + std::to_string(cluster++) + " {\n";
    out += "    label=\"" + detail::dot_escape(schema) + "\";\n";
    for (int id : net.primes_of(schema)) {
      const Prime& p = net.primes[id];
      const char* kind = p.kind == Prime::Kind::declaration ? "declaration"
                         : p.kind == Prime::Kind::xi_equality
                             ? "xi-equality"
                             : "predicate";
      out += "    p" + std::to_string(id) + " [label=\"" +
             detail::dot_escape(p.label) + "\", kind=\"" + kind +
             "\", guard=" + (p.is_guard ? "true" : "false") + "];\n";
    }
    out += "  }\n";
  }
  for (const auto& a : net.control_arcs)
    out += "  p" + std::to_string(a.src) + " -> p" + std::to_string(a.dst) +
           " [type=control, style=bold];\n";
  for (const auto& a : net.data_arcs)
    out += "  p" + std::to_string(a.src) + " -> p" + std::to_string(a.dst) +
           " [type=data, var=\"" + detail::dot_escape(a.var) + "\"];\n";
  for (const auto& a : net.inter_arcs)
    out += "  p" + std::to_string(a.src) + " -> p" + std::to_string(a.dst) +
           " [type=interschema, var=\"" + detail::dot_escape(a.var) +
           "\", style=dashed];\n";
  out += "}\n";
  return out;
}

}  // namespace zedmet::srn
