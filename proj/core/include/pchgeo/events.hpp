#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pchgeo/geom.hpp"
#include "pchgeo/worker_team.hpp"

namespace pchgeo {

/// Distance events: by vertex, then smaller value.
bool event_before(const DistanceEvent& a, const DistanceEvent& b);
/// Angle events: by half-edge, then smaller apex distance, then smaller window
/// key, then the remaining fields so the order is total.
bool event_before(const AngleEvent& a, const AngleEvent& b);

struct AppliedCounts {
  std::size_t distance = 0;
  std::size_t angle = 0;
  std::size_t total() const { return distance + angle; }
};

/// Sorts both arrays, then for every run of equal keys applies only the first
/// event, and only if it still improves the stored value. Runs are applied in
/// parallel when a team is given; distinct runs touch distinct entries.
AppliedCounts apply_events(std::span<DistanceEvent> distance_events, std::span<AngleEvent> angle_events,
                           std::span<double> dist, std::span<SplitEntry> split, WorkerTeam* team = nullptr);

/// Concatenates per-worker buffers in worker order using exclusive offsets and
/// a parallel copy. The buffers are emptied.
template <class T>
void gather(std::span<std::vector<T>* const> buffers, std::vector<T>& out, WorkerTeam& team);

}  // namespace pchgeo
