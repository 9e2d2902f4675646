// metrics_demo - measure an inline specification and code snippet, pair
// them and print both metric tables.
#include <iostream>

#include "zedmet/codemetrics/table.hpp"
#include "zedmet/mil/callgraph.hpp"
#include "zedmet/mil/parser.hpp"
#include "zedmet/pairing/pairing.hpp"
#include "zedmet/specmetrics/table.hpp"
#include "zedmet/srn/srn.hpp"
#include "zedmet/zspec/expand.hpp"
#include "zedmet/zspec/parser.hpp"

int main() {
  using namespace zedmet;

  const char* spec_text = R"(given NAT

schema Counter
  decl ctr : NAT
end

schema Inc
  delta Counter
  decl amt? : NAT
  pred amt? > 0
  pred ctr' = ctr + amt?
end
)";

  const char* code_text = R"(Ctr : Integer;

-- trace_unit: Inc
procedure Inc_Ctr(Amt : in Integer) is
begin
  if Amt > 0 then
    Ctr := Ctr + Amt;
  end if;
end Inc_Ctr;
)";

  auto spec = zspec::resolve_inclusions(zspec::parse_specification(spec_text));
  auto net = srn::build_srn(spec);
  auto spec_table = specmetrics::compute_all(spec, net);

  auto units = mil::parse_code(code_text);
  auto graph = mil::build_call_graph(units);
  auto code_table = codemetrics::compute_all(units, graph);

  auto traces = pairing::extract_trace_units(units, code_text);
  auto report = pairing::match_pairs(spec, traces);
  auto observations =
      pairing::assemble_observations(report, spec_table, code_table);

  std::cout << specmetrics::to_csv(spec_table) << "\n"
            << codemetrics::to_csv(code_table) << "\n"
            << pairing::observations_to_csv(observations);
  return 0;
}
