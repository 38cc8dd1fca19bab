#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "acgm/metering.hpp"
#include "acgm/types.hpp"

namespace acgm {

// One row of a run trace.  Row k = 0 describes the start point (cost 0); row
// k >= 1 describes the state after the k-th accepted iteration.
struct TraceRecord {
  int k = 0;
  long long wtu = 0;    // cumulative simulated cost up to and including step k
  double f_value = 0.0;  // F(x_k); may be +infinity only at k = 0
  double lip = 0.0;      // Lipschitz estimate in force after step k
  double weight = 0.0;   // guarantee weight A_k (see the per-method notes below)
  int backtracks = 0;    // rejected trials inside step k's search
};

// Weight conventions: ACGM and AMGS report their native accumulated weight;
// FISTA reports the surrogate guarantee weight reconstructed from its
// accepted estimates (the method itself never forms one); FGM reports its
// weight divided by the initial estimate-function curvature, which is the
// scaling under which the standard certificate envelope applies.
struct Trace {
  MethodKind method = MethodKind::acgm_es;
  std::vector<TraceRecord> records;
  bool aborted = false;        // a search failed; records hold the completed prefix
  std::string abort_reason;

  // Filled only when the run was configured to record states; aligned with
  // records.  Vertex and curvature history exists only for the methods that
  // maintain an explicit estimate-function vertex.
  std::vector<Vector> xs;
  std::vector<Vector> vertices;
  std::vector<double> curvatures;

  bool has_states() const { return !xs.empty(); }
};

// CSV with the header k,wtu,F,L,A,backtracks; numbers carry 17 significant
// digits so traces round-trip exactly.
void write_trace_csv(std::ostream& os, const Trace& t);

// Long-format CSV for multi-run comparisons: a leading `solver` label column
// followed by the same schema.
void write_compare_csv(std::ostream& os,
                       const std::vector<std::pair<std::string, Trace>>& runs);

}  // namespace acgm
