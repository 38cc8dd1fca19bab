#pragma once

#include <map>
#include <string>
#include <utility>

namespace acgm {

enum class MethodKind { acgm_es, acgm_ex, fista, fista_cp, amgs, fgm };

const char* method_name(MethodKind m);
MethodKind method_from_name(const std::string& name);  // throws on unknown names

enum class CostEvent {
  plain_iteration,  // one accepted iteration with zero backtracks
  backtrack,        // one extra rejected trial inside the search
};

// Cost in WTU (wall-clock time units) of one event.  One WTU is the wall time
// of a single f or grad-f oracle call under a model with enough processing
// units to run the independent oracle calls of one trial concurrently; prox
// maps and vector arithmetic are free, and the F values recorded in traces
// are diagnostics that fit on an otherwise idle unit, so they are free too.
//
//   method     plain iteration   per backtrack
//   ACGM              1                2
//   FISTA             1                1
//   AMGS              2                2
//   FGM               1               (no search)
//   FISTA-CP          1               (no search)
//
// Throws std::invalid_argument for the two (method, event) pairs that cannot
// occur, so accounting bugs surface instead of silently costing zero.
int event_cost(MethodKind method, CostEvent event);

// Tally of simulated cost, split per (method, event) pair.
struct WtuLedger {
  long long total_wtu = 0;
  std::map<std::pair<MethodKind, CostEvent>, long long> event_counts;

  // Adds multiplicity events of the given kind (multiplicity >= 0).
  void charge(MethodKind method, CostEvent event, long long multiplicity);
};

// Total cost of a run with the given iteration and backtrack counts.
long long wtu_of_run(MethodKind method, long long iterations, long long backtracks);

}  // namespace acgm
