#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pchgeo {

/// std::thread::hardware_concurrency(), at least 1.
unsigned default_worker_count();

/// Fixed set of T workers that run one job at a time. The calling thread acts
/// as worker 0, so a team of one spawns no threads. Threads sleep on a
/// condition variable between jobs instead of spinning.
class WorkerTeam {
 public:
  explicit WorkerTeam(unsigned workers);
  ~WorkerTeam();
  WorkerTeam(const WorkerTeam&) = delete;
  WorkerTeam& operator=(const WorkerTeam&) = delete;

  unsigned size() const { return size_; }

  /// Calls job(i) for every worker i in [0, size()) and waits for all of them.
  /// The first exception thrown by any worker is rethrown here.
  void run(const std::function<void(unsigned)>& job);

 private:
  void loop(unsigned index);

  unsigned size_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(unsigned)>* job_ = nullptr;
  std::size_t generation_ = 0;
  unsigned pending_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

/// Half-open range [begin, end) of worker i when n items are split into
/// `parts` contiguous, nearly equal chunks.
struct ChunkRange {
  std::size_t begin;
  std::size_t end;
};
ChunkRange chunk_of(std::size_t n, unsigned parts, unsigned i);

}  // namespace pchgeo
