#include <nlohmann/json.hpp>

#include "pchgeo/engine.hpp"

namespace pchgeo {

std::string stats_to_json(const RunStats& s) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["algorithm"] = s.algorithm;
  j["vertices"] = s.vertices;
  j["faces"] = s.faces;
  j["sources"] = s.sources;
  j["k"] = s.k;
  j["workers"] = s.workers;
  j["selection"] = s.selection;
  j["windows_created"] = s.windows_created;
  j["windows_pruned"] = s.windows_pruned;
  j["pruned_ich"] = s.pruned_by.ich;
  j["pruned_split"] = s.pruned_by.split;
  j["pruned_tiny"] = s.pruned_by.tiny;
  j["pruned_degenerate"] = s.pruned_by.degenerate;
  j["pruned_stale"] = s.pruned_by.stale;
  j["windows_propagated"] = s.windows_propagated;
  j["iterations"] = s.iterations;
  j["peak_active"] = s.peak_active;
  j["events_created"] = s.events_created;
  j["events_applied"] = s.events_applied;
  j["max_children"] = s.max_children;
  j["buffer_overflows"] = s.buffer_overflows;
  j["truncated"] = s.truncated;
  j["seconds_init"] = s.phase_seconds.init;
  j["seconds_select"] = s.phase_seconds.select;
  j["seconds_propagate"] = s.phase_seconds.propagate;
  j["seconds_compact"] = s.phase_seconds.compact;
  j["seconds_apply"] = s.phase_seconds.apply;
  j["seconds_total"] = s.total_seconds;
  return j.dump(2);
}

}  // namespace pchgeo
