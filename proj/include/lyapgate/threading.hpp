#pragma once

#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace lyapgate {

// Fixed-size worker pool for the sigma-copy loops. parallel_for blocks until
// all indices ran; the caller thread participates. The first exception thrown
// by any index is rethrown on the caller after the batch drains. With
// n_threads <= 1 everything runs inline. Numerical reductions stay outside
// the pool (callers reduce per-index results serially, in index order), so
// results are independent of the thread count.
class ThreadPool {
 public:
  explicit ThreadPool(int n_threads);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  int size() const { return int(workers_.size()) + 1; }
  void parallel_for(int begin, int end, const std::function<void(int)>& fn);

  static int resolve_threads(int requested);  // <= 0 means hardware default

 private:
  void worker_loop();
  void run_indices();

  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable cv_, done_cv_;
  const std::function<void(int)>* fn_ = nullptr;
  std::atomic<int> next_{0};
  int end_ = 0;
  int pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  std::mutex err_mu_;
  std::exception_ptr error_;
};

}  // namespace lyapgate
