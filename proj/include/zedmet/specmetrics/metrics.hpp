// metrics.hpp - the eleven per-schema specification measures.
//
//   CC   prime count of the schema graph
//   VL   1 + number of primes that terminate at least one control arc
//   VU   1 + number of control arcs
//   DU   number of data arcs (src, dst, variable)
//   USE  distinct base names with a plain or input occurrence
//   DEF  distinct base names defined primed or as output
//   AND  `and` connectives across the schema's predicate text
//   OR   `or` connectives across the schema's predicate text
//   COV  mean relative slice size, slices taken per DEF variable
//   OVL  mean share of the all-slice intersection within each slice
//   CHI  pairwise-normalised inter-schema flow, averaged over other schemas
#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "zedmet/common/error.hpp"
#include "zedmet/srn/srn.hpp"
#include "zedmet/zspec/ast.hpp"

namespace zedmet::specmetrics {

using srn::Srn;
using zspec::Decoration;

struct SpecMetrics {
  std::string schema;
  long long cc = 0;
  long long v_l = 1;
  long long v_u = 1;
  long long du = 0;
  long long use_count = 0;
  long long def_count = 0;
  long long and_count = 0;
  long long or_count = 0;
  double coverage = 0.0;
  double overlap = 0.0;
  double coupling = 0.0;
  bool degenerate = false;  // slice profile was empty (DEF = 0 or CC = 0)
};

struct SliceProfile {
  std::string schema;
  // one criterion per DEF variable, lexicographic by variable name
  std::vector<std::pair<std::string, std::set<int>>> criteria;
  std::vector<std::set<int>> slices;
};

namespace detail {

inline void count_connectives(const zspec::PredExpr& e, long long& ands,
                              long long& ors) {
  if (e.kind == zspec::ExprKind::conj) ++ands;
  if (e.kind == zspec::ExprKind::disj) ++ors;
  for (const auto& c : e.children) count_connectives(c, ands, ors);
}

}  // namespace detail

// CC, AND, OR, USE, DEF. AND/OR are counted on the pre-split predicate
// text, so conjunct splitting does not erase them.
inline void basic_metrics(const zspec::SchemaDef& schema, const Srn& net,
                          SpecMetrics& m) {
  const auto& ids = net.primes_of(schema.name);
  m.cc = static_cast<long long>(ids.size());
  m.and_count = 0;
  m.or_count = 0;
  for (const auto& p : schema.predicates)
    detail::count_connectives(p.expr, m.and_count, m.or_count);
  std::set<std::string> used, defined;
  for (int id : ids) {
    const srn::Prime& p = net.primes[id];
    for (const auto& u : p.uses) used.insert(u.base);
    for (const auto& d : p.defs)
      if (d.decoration == Decoration::primed ||
          d.decoration == Decoration::output)
        defined.insert(d.base);
  }
  m.use_count = static_cast<long long>(used.size());
  m.def_count = static_cast<long long>(defined.size());
}

// VL, VU, DU from the schema's control and data arcs.
inline void structure_metrics(const zspec::SchemaDef& schema, const Srn& net,
                              SpecMetrics& m) {
  std::set<int> control_targets;
  long long control_count = 0;
  for (const auto& a : net.control_arcs) {
    if (net.primes[a.src].schema != schema.name) continue;
    ++control_count;
    control_targets.insert(a.dst);
  }
  m.v_l = 1 + static_cast<long long>(control_targets.size());
  m.v_u = 1 + control_count;
  m.du = 0;
  for (const auto& a : net.data_arcs)
    if (net.primes[a.src].schema == schema.name) ++m.du;
}

// Criterion plus everything backward-reachable over reversed intra-schema
// control and data arcs.
inline std::set<int> slice(const Srn& net, const std::string& schema,
                           const std::set<int>& criterion) {
  const auto& ids = net.primes_of(schema);
  std::set<int> member(ids.begin(), ids.end());
  for (int id : criterion)
    if (!member.count(id))
      throw Error(ErrorKind::criterion_outside_schema,
                  "slicing criterion contains prime " + std::to_string(id) +
                      " outside schema '" + schema + "'");

  std::map<int, std::vector<int>> preds;  // dst -> srcs (reversed arcs)
  for (const auto& a : net.control_arcs)
    if (net.primes[a.src].schema == schema) preds[a.dst].push_back(a.src);
  for (const auto& a : net.data_arcs)
    if (net.primes[a.src].schema == schema) preds[a.dst].push_back(a.src);

  std::set<int> result(criterion.begin(), criterion.end());
  std::queue<int> work;
  for (int id : criterion) work.push(id);
  while (!work.empty()) {
    int id = work.front();
    work.pop();
    auto it = preds.find(id);
    if (it == preds.end()) continue;
    for (int src : it->second)
      if (result.insert(src).second) work.push(src);
  }
  return result;
}

// One slicing criterion per defined variable: all primes defining v' or v!.
inline SliceProfile slice_profile(const Srn& net,
                                  const zspec::SchemaDef& schema) {
  SliceProfile profile;
  profile.schema = schema.name;
  std::map<std::string, std::set<int>> criteria;  // ordered by variable
  for (int id : net.primes_of(schema.name)) {
    const srn::Prime& p = net.primes[id];
    for (const auto& d : p.defs)
      if (d.decoration == Decoration::primed ||
          d.decoration == Decoration::output)
        criteria[d.base].insert(id);
  }
  for (auto& [var, crit] : criteria) {
    profile.criteria.emplace_back(var, crit);
    profile.slices.push_back(slice(net, schema.name, crit));
  }
  return profile;
}

// Coverage and Overlap from the slice profile; n is the schema's CC.
inline void semantic_metrics(const SliceProfile& profile, long long cc,
                             SpecMetrics& m) {
  std::size_t slice_count = profile.slices.size();
  if (slice_count == 0 || cc == 0) {
    m.coverage = 0.0;
    m.overlap = 0.0;
    m.degenerate = true;
    return;
  }
  std::set<int> intersection = profile.slices.front();
  for (const auto& sl : profile.slices) {
    std::set<int> next;
    std::set_intersection(intersection.begin(), intersection.end(), sl.begin(),
                          sl.end(), std::inserter(next, next.begin()));
    intersection = std::move(next);
  }
  double cov = 0.0, ovl = 0.0;
  for (const auto& sl : profile.slices) {
    cov += static_cast<double>(sl.size()) / static_cast<double>(cc);
    ovl += static_cast<double>(intersection.size()) /
           static_cast<double>(sl.size());
  }
  m.coverage = cov / static_cast<double>(slice_count);
  m.overlap = ovl / static_cast<double>(slice_count);
  m.degenerate = false;
}

// Normalised pairwise flow: for every other schema, flows in both
// directions relative to the two schemas' sizes, averaged over k-1 peers.
inline double coupling(const Srn& net, const std::string& schema) {
  std::size_t k = net.schema_order.size();
  if (k <= 1) return 0.0;
  std::map<std::pair<std::string, std::string>, long long> flows;
  for (const auto& a : net.inter_arcs) ++flows[{a.src_schema, a.dst_schema}];
  double total = 0.0;
  double size_i = static_cast<double>(net.primes_of(schema).size());
  for (const auto& other : net.schema_order) {
    if (other == schema) continue;
    double size_j = static_cast<double>(net.primes_of(other).size());
    if (size_i + size_j == 0.0) continue;
    long long f = 0;
    auto out = flows.find({schema, other});
    if (out != flows.end()) f += out->second;
    auto in = flows.find({other, schema});
    if (in != flows.end()) f += in->second;
    total += static_cast<double>(f) / (size_i + size_j);
  }
  return total / static_cast<double>(k - 1);
}

inline SpecMetrics compute_schema_metrics(const zspec::SchemaDef& schema,
                                          const Srn& net) {
  SpecMetrics m;
  m.schema = schema.name;
  basic_metrics(schema, net, m);
  structure_metrics(schema, net, m);
  semantic_metrics(slice_profile(net, schema), m.cc, m);
  m.coupling = coupling(net, schema.name);
  return m;
}

// Per-schema metrics in specification order. Each schema's computation is
// independent over the shared immutable net.
inline std::vector<SpecMetrics> compute_all(const zspec::Specification& spec,
                                            const Srn& net) {
  std::vector<SpecMetrics> out;
  out.reserve(spec.schemas.size());
  for (const auto& s : spec.schemas)
    out.push_back(compute_schema_metrics(s, net));
  return out;
}

}  // namespace zedmet::specmetrics
