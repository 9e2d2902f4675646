// metrics.hpp - the nine per-unit code measures.
//
//   CL     physical lines of the unit span
//   CLC    lines containing source code (not blank, not comment-only)
//   CLCD   declarative lines
//   CLCE   executable lines
//   CYC    1 + binary decision count
//   KNOTS  interleaving jump pairs
//   FIN    callers + in/in-out parameters + globals read
//   FOUT   callees + out/in-out parameters + function result + globals written
//   SI     (FIN * FOUT)^2
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "zedmet/mil/ast.hpp"
#include "zedmet/mil/callgraph.hpp"

namespace zedmet::codemetrics {

using mil::CodeUnit;

struct CodeMetrics {
  std::string unit;
  long long cl = 0;
  long long clc = 0;
  long long clcd = 0;
  long long clce = 0;
  long long cyc = 1;
  long long knots = 0;
  long long fin = 0;
  long long fout = 0;
  long long si = 0;
};

inline void line_counts(const CodeUnit& unit, CodeMetrics& m) {
  m.cl = unit.span();
  m.clc = 0;
  m.clcd = 0;
  m.clce = 0;
  for (auto c : unit.line_classes) {
    if (c != mil::LineClass::blank && c != mil::LineClass::comment) ++m.clc;
    if (c == mil::LineClass::declarative) ++m.clcd;
    if (c == mil::LineClass::executable) ++m.clce;
  }
}

// 1 + #if + #elsif + #while + #for + #(exit when) + sum over case
// statements of max(0, #when - 1) + #(and then) + #(or else).
inline long long cyclomatic(const CodeUnit& unit) {
  const auto& d = unit.decisions;
  long long cyc = 1 + d.if_count + d.elsif_count + d.while_count +
                  d.for_count + d.exit_when_count + d.and_then_count +
                  d.or_else_count;
  for (int whens : d.case_when_counts)
    cyc += std::max(0, whens - 1);
  return cyc;
}

// Jump spans [min(src,tgt), max(src,tgt)] knot iff they strictly interleave.
inline long long knots(const CodeUnit& unit) {
  struct Span {
    int lo, hi;
  };
  std::vector<Span> spans;
  spans.reserve(unit.jumps.size());
  for (const auto& j : unit.jumps)
    spans.push_back({std::min(j.src, j.dst), std::max(j.src, j.dst)});
  long long count = 0;
  for (std::size_t i = 0; i < spans.size(); ++i)
    for (std::size_t j = i + 1; j < spans.size(); ++j) {
      const auto& a = spans[i];
      const auto& b = spans[j];
      if ((a.lo < b.lo && b.lo < a.hi && a.hi < b.hi) ||
          (b.lo < a.lo && a.lo < b.hi && b.hi < a.hi))
        ++count;
    }
  return count;
}

inline void information_flow(const CodeUnit& unit, const mil::CallGraph& graph,
                             CodeMetrics& m) {
  long long in_params = 0, out_params = 0;
  for (const auto& p : unit.params) {
    if (p.mode == mil::ParamMode::in || p.mode == mil::ParamMode::in_out)
      ++in_params;
    if (p.mode == mil::ParamMode::out || p.mode == mil::ParamMode::in_out)
      ++out_params;
  }
  m.fin = static_cast<long long>(graph.callers_of(unit.name).size()) +
          in_params + static_cast<long long>(unit.global_reads.size());
  m.fout = static_cast<long long>(graph.callees_of(unit.name).size()) +
           out_params + (unit.is_function ? 1 : 0) +
           static_cast<long long>(unit.global_writes.size());
  m.si = (m.fin * m.fout) * (m.fin * m.fout);
}

inline CodeMetrics compute_unit_metrics(const CodeUnit& unit,
                                        const mil::CallGraph& graph) {
  CodeMetrics m;
  m.unit = unit.name;
  line_counts(unit, m);
  m.cyc = cyclomatic(unit);
  m.knots = knots(unit);
  information_flow(unit, graph, m);
  return m;
}

inline std::vector<CodeMetrics> compute_all(
    const std::vector<CodeUnit>& units, const mil::CallGraph& graph) {
  std::vector<CodeMetrics> out;
  out.reserve(units.size());
  for (const auto& u : units) out.push_back(compute_unit_metrics(u, graph));
  return out;
}

}  // namespace zedmet::codemetrics
