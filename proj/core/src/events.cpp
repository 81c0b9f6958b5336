#include "pchgeo/events.hpp"

#include <algorithm>
#include <atomic>
#include <tuple>

#include "pchgeo/pool.hpp"

namespace pchgeo {

bool event_before(const DistanceEvent& a, const DistanceEvent& b) {
  return std::tie(a.vertex, a.value) < std::tie(b.vertex, b.value);
}

bool event_before(const AngleEvent& a, const AngleEvent& b) {
  const auto tuple = [](const AngleEvent& e) {
    const Window& w = e.window;
    return std::tie(e.half_edge, e.apex_distance, e.key, e.crossing, w.half_edge, w.b0, w.b1, w.d0, w.d1, w.d);
  };
  return tuple(a) < tuple(b);
}

namespace {

template <class Event, class Key, class Apply>
std::size_t apply_runs(std::span<Event> events, WorkerTeam* team, Key key, Apply apply) {
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return event_before(a, b); });
  const unsigned parts = team ? team->size() : 1;
  std::atomic<std::size_t> applied{0};
  auto body = [&](unsigned t) {
    const auto [begin, end] = chunk_of(events.size(), parts, t);
    std::size_t local = 0;
    for (std::size_t j = begin; j < end; ++j) {
      if (j > 0 && key(events[j]) == key(events[j - 1])) continue;
      if (apply(events[j])) ++local;
    }
    applied += local;
  };
  if (team && events.size() > parts) {
    team->run(body);
  } else {
    for (unsigned t = 0; t < parts; ++t) body(t);
  }
  return applied.load();
}

}  // namespace

AppliedCounts apply_events(std::span<DistanceEvent> distance_events, std::span<AngleEvent> angle_events,
                           std::span<double> dist, std::span<SplitEntry> split, WorkerTeam* team) {
  AppliedCounts counts;
  counts.distance = apply_runs(
      distance_events, team, [](const DistanceEvent& e) { return e.vertex; },
      [&](const DistanceEvent& e) {
        double& slot = dist[static_cast<std::size_t>(e.vertex)];
        if (!(e.value < slot)) return false;
        slot = e.value;
        return true;
      });
  counts.angle = apply_runs(
      angle_events, team, [](const AngleEvent& e) { return e.half_edge; },
      [&](const AngleEvent& e) {
        SplitEntry& slot = split[static_cast<std::size_t>(e.half_edge)];
        if (!(e.apex_distance < slot.apex_distance)) return false;
        slot = {e.apex_distance, e.crossing, e.window};
        return true;
      });
  return counts;
}

template <class T>
void gather(std::span<std::vector<T>* const> buffers, std::vector<T>& out, WorkerTeam& team) {
  std::vector<std::size_t> counts(buffers.size());
  for (std::size_t i = 0; i < buffers.size(); ++i) counts[i] = buffers[i]->size();
  const auto offsets = exclusive_offsets(counts);
  const std::size_t total = offsets.empty() ? 0 : offsets.back() + counts.back();
  out.resize(total);
  team.run([&](unsigned t) {
    for (std::size_t b = t; b < buffers.size(); b += team.size()) {
      std::copy(buffers[b]->begin(), buffers[b]->end(), out.begin() + static_cast<std::ptrdiff_t>(offsets[b]));
      buffers[b]->clear();
    }
  });
}

template void gather(std::span<std::vector<DistanceEvent>* const>, std::vector<DistanceEvent>&, WorkerTeam&);
template void gather(std::span<std::vector<AngleEvent>* const>, std::vector<AngleEvent>&, WorkerTeam&);
template void gather(std::span<std::vector<Window>* const>, std::vector<Window>&, WorkerTeam&);

}  // namespace pchgeo
