#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "pchgeo/geom.hpp"
#include "pchgeo/worker_team.hpp"

namespace pchgeo {

enum class SelectionMode { exact, approximate_strided };

const char* to_string(SelectionMode mode);
/// Accepts "exact", "strided" and "approximate_strided".
SelectionMode parse_selection_mode(std::string_view name);

/// Exclusive prefix sum: offsets[i] = counts[0] + ... + counts[i-1].
std::vector<std::size_t> exclusive_offsets(std::span<const std::size_t> counts);

/// Active windows stored without gaps, with their keys kept in a parallel
/// array so selection scans touch only the keys.
class WindowPool {
 public:
  std::size_t size() const { return windows_.size(); }
  bool empty() const { return windows_.empty(); }
  std::span<const Window> windows() const { return windows_; }
  std::span<const double> keys() const { return keys_; }

  void push(const Window& w);

  /// Appends every worker buffer in worker order: each buffer's offset is the
  /// exclusive prefix sum of the sizes, and the workers copy in parallel.
  /// Buffers are left empty with their capacity kept.
  void append(std::span<std::vector<Window>* const> buffers, WorkerTeam& team);

  /// Moves the windows at the marked positions into `out` (pool order) and
  /// closes the gaps. `mark` must have size() entries.
  void extract(std::span<const std::uint8_t> mark, std::vector<Window>& out);

  void clear();

 private:
  std::vector<Window> windows_;
  std::vector<double> keys_;
};

/// Removes about k windows from the pool into `selected`.
/// exact: the k smallest keys; ties at the threshold go to lower positions.
/// approximate_strided: worker i looks at positions i, i+T, i+2T, ... and
/// takes its ceil(k/T) smallest.
/// With k >= size() everything is taken.
void select_nearest(WindowPool& pool, std::size_t k, SelectionMode mode, WorkerTeam& team,
                    std::vector<Window>& selected);

}  // namespace pchgeo
