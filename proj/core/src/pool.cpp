#include "pchgeo/pool.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace pchgeo {

const char* to_string(SelectionMode mode) {
  return mode == SelectionMode::exact ? "exact" : "approximate_strided";
}

SelectionMode parse_selection_mode(std::string_view name) {
  if (name == "exact") return SelectionMode::exact;
  if (name == "strided" || name == "approximate_strided") return SelectionMode::approximate_strided;
  throw std::invalid_argument("unknown selection mode '" + std::string(name) + "'");
}

std::vector<std::size_t> exclusive_offsets(std::span<const std::size_t> counts) {
  std::vector<std::size_t> offsets(counts.size(), 0);
  std::exclusive_scan(counts.begin(), counts.end(), offsets.begin(), std::size_t{0});
  return offsets;
}

void WindowPool::push(const Window& w) {
  windows_.push_back(w);
  keys_.push_back(window_key(w));
}

void WindowPool::append(std::span<std::vector<Window>* const> buffers, WorkerTeam& team) {
  std::vector<std::size_t> counts(buffers.size());
  for (std::size_t i = 0; i < buffers.size(); ++i) counts[i] = buffers[i]->size();
  const auto offsets = exclusive_offsets(counts);
  const std::size_t base = windows_.size();
  const std::size_t total = offsets.empty() ? 0 : offsets.back() + counts.back();
  windows_.resize(base + total);
  keys_.resize(base + total);
  team.run([&](unsigned t) {
    for (std::size_t b = t; b < buffers.size(); b += team.size()) {
      auto& src = *buffers[b];
      const std::size_t at = base + offsets[b];
      std::copy(src.begin(), src.end(), windows_.begin() + static_cast<std::ptrdiff_t>(at));
      for (std::size_t j = 0; j < src.size(); ++j) keys_[at + j] = window_key(src[j]);
      src.clear();
    }
  });
}

void WindowPool::extract(std::span<const std::uint8_t> mark, std::vector<Window>& out) {
  std::size_t kept = 0;
  for (std::size_t i = 0; i < windows_.size(); ++i) {
    if (mark[i]) {
      out.push_back(windows_[i]);
    } else {
      windows_[kept] = windows_[i];
      keys_[kept] = keys_[i];
      ++kept;
    }
  }
  windows_.resize(kept);
  keys_.resize(kept);
}

void WindowPool::clear() {
  windows_.clear();
  keys_.clear();
}

namespace {

// Marks the `take` smallest keys among positions idx (ties to lower positions).
void mark_smallest(std::span<const double> keys, std::vector<std::size_t>& idx, std::size_t take,
                   std::vector<std::uint8_t>& mark) {
  if (take >= idx.size()) {
    for (const auto i : idx) mark[i] = 1;
    return;
  }
  auto less = [&](std::size_t a, std::size_t b) { return keys[a] < keys[b] || (keys[a] == keys[b] && a < b); };
  std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end(), less);
  for (std::size_t j = 0; j < take; ++j) mark[idx[j]] = 1;
}

}  // namespace

void select_nearest(WindowPool& pool, std::size_t k, SelectionMode mode, WorkerTeam& team,
                    std::vector<Window>& selected) {
  selected.clear();
  const std::size_t n = pool.size();
  if (n == 0 || k == 0) return;
  std::vector<std::uint8_t> mark(n, 0);
  if (k >= n) {
    std::fill(mark.begin(), mark.end(), 1);
  } else if (mode == SelectionMode::exact) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    mark_smallest(pool.keys(), idx, k, mark);
  } else {
    const unsigned workers = team.size();
    const std::size_t share = (k + workers - 1) / workers;
    team.run([&](unsigned t) {
      std::vector<std::size_t> idx;
      idx.reserve(n / workers + 1);
      for (std::size_t i = t; i < n; i += workers) idx.push_back(i);
      // Strided positions never overlap, so workers write disjoint marks.
      mark_smallest(pool.keys(), idx, share, mark);
    });
  }
  selected.reserve(std::min(n, k + team.size()));
  pool.extract(mark, selected);
}

}  // namespace pchgeo
