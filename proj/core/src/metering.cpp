#include "acgm/metering.hpp"

#include <stdexcept>

namespace acgm {

const char* method_name(MethodKind m) {
  switch (m) {
    case MethodKind::acgm_es:
      return "acgm_es";
    case MethodKind::acgm_ex:
      return "acgm_ex";
    case MethodKind::fista:
      return "fista";
    case MethodKind::fista_cp:
      return "fista_cp";
    case MethodKind::amgs:
      return "amgs";
    case MethodKind::fgm:
      return "fgm";
  }
  throw std::invalid_argument("unknown method kind");
}

MethodKind method_from_name(const std::string& name) {
  if (name == "acgm_es") return MethodKind::acgm_es;
  if (name == "acgm_ex") return MethodKind::acgm_ex;
  if (name == "fista") return MethodKind::fista;
  if (name == "fista_cp") return MethodKind::fista_cp;
  if (name == "amgs") return MethodKind::amgs;
  if (name == "fgm") return MethodKind::fgm;
  throw std::invalid_argument("unknown solver name: " + name);
}

int event_cost(MethodKind method, CostEvent event) {
  const bool plain = event == CostEvent::plain_iteration;
  switch (method) {
    case MethodKind::acgm_es:
    case MethodKind::acgm_ex:
      // Advancing costs one oracle stage (concurrent f and gradient); a
      // rejected trial moves the auxiliary point, so it repeats both the
      // gradient stage and the value stage at the new estimate.
      return plain ? 1 : 2;
    case MethodKind::fista:
      // FISTA's auxiliary point ignores the estimate, so one gradient serves
      // the whole search; a rejected trial adds only a value stage.
      return plain ? 1 : 1;
    case MethodKind::amgs:
      // Two gradient evaluations per iteration (auxiliary point and iterate),
      // and both repeat on rejection.
      return plain ? 2 : 2;
    case MethodKind::fista_cp:
    case MethodKind::fgm:
      if (plain) return 1;
      throw std::invalid_argument("fixed-estimate methods have no backtrack events");
  }
  throw std::invalid_argument("unknown method kind");
}

void WtuLedger::charge(MethodKind method, CostEvent event, long long multiplicity) {
  if (multiplicity < 0) {
    throw std::invalid_argument("event multiplicity must be nonnegative");
  }
  const long long cost = event_cost(method, event);  // validates the pair
  event_counts[{method, event}] += multiplicity;
  total_wtu += cost * multiplicity;
}

long long wtu_of_run(MethodKind method, long long iterations, long long backtracks) {
  long long total = iterations * event_cost(method, CostEvent::plain_iteration);
  if (backtracks > 0) {
    total += backtracks * event_cost(method, CostEvent::backtrack);
  }
  return total;
}

}  // namespace acgm
