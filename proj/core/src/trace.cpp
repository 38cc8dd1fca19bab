#include "acgm/trace.hpp"

#include <cstdio>
#include <ostream>

namespace acgm {
namespace {

// 17 significant digits round-trip any double exactly.
void put(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

void put_row(std::ostream& os, const TraceRecord& r) {
  os << r.k << ',' << r.wtu << ',';
  put(os, r.f_value);
  os << ',';
  put(os, r.lip);
  os << ',';
  put(os, r.weight);
  os << ',' << r.backtracks << '\n';
}

}  // namespace

void write_trace_csv(std::ostream& os, const Trace& t) {
  os << "k,wtu,F,L,A,backtracks\n";
  for (const TraceRecord& r : t.records) {
    put_row(os, r);
  }
}

void write_compare_csv(std::ostream& os,
                       const std::vector<std::pair<std::string, Trace>>& runs) {
  os << "solver,k,wtu,F,L,A,backtracks\n";
  for (const auto& [label, trace] : runs) {
    for (const TraceRecord& r : trace.records) {
      os << label << ',';
      put_row(os, r);
    }
  }
}

}  // namespace acgm
