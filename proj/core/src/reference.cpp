#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "pchgeo/engine.hpp"

namespace pchgeo {

DistanceField run_dijkstra(const SurfaceMesh& mesh, std::span<const Index> sources) {
  check_sources(mesh, sources);
  DistanceField dist(mesh.vertex_count(), kInfinity);
  using Item = std::pair<double, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (const Index s : sources) {
    dist[static_cast<std::size_t>(s)] = 0.0;
    queue.push({0.0, s});
  }
  auto relax = [&](Index to, double value) {
    double& slot = dist[static_cast<std::size_t>(to)];
    if (value < slot) {
      slot = value;
      queue.push({value, to});
    }
  };
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[static_cast<std::size_t>(v)]) continue;
    for (const Index h : mesh.outgoing_half_edges(v)) {
      relax(mesh.target(h), d + mesh.length(h));
      // The clockwise-most neighbour of a boundary vertex is only reachable
      // through the incoming half-edge of the last corner.
      const Index back = prev_half_edge(h);
      if (mesh.is_boundary_half_edge(back)) relax(mesh.origin(back), d + mesh.length(back));
    }
  }
  return dist;
}

}  // namespace pchgeo
