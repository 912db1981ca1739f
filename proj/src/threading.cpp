#include "lyapgate/threading.hpp"

namespace lyapgate {

ThreadPool::ThreadPool(int n_threads) {
  for (int i = 1; i < n_threads; ++i)
    workers_.emplace_back([this] { worker_loop(); });
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard lk(mu_);
    stop_ = true;
  }
  cv_.notify_all();
  for (auto& w : workers_) w.join();
}

int ThreadPool::resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

void ThreadPool::parallel_for(int begin, int end, const std::function<void(int)>& fn) {
  if (end <= begin) return;
  if (workers_.empty() || end - begin == 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  {
    std::lock_guard lk(mu_);
    fn_ = &fn;
    next_.store(begin, std::memory_order_relaxed);
    end_ = end;
    error_ = nullptr;
    pending_ = int(workers_.size());
    ++generation_;
  }
  cv_.notify_all();
  run_indices();
  {
    std::unique_lock lk(mu_);
    done_cv_.wait(lk, [&] { return pending_ == 0; });
    fn_ = nullptr;
  }
  if (error_) std::rethrow_exception(error_);
}

void ThreadPool::worker_loop() {
  std::uint64_t seen = 0;
  std::unique_lock lk(mu_);
  for (;;) {
    cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
    if (stop_) return;
    seen = generation_;
    lk.unlock();
    run_indices();
    lk.lock();
    if (--pending_ == 0) done_cv_.notify_all();
  }
}

void ThreadPool::run_indices() {
  for (;;) {
    const int i = next_.fetch_add(1, std::memory_order_relaxed);
    if (i >= end_) break;
    try {
      (*fn_)(i);
    } catch (...) {
      std::lock_guard g(err_mu_);
      if (!error_) error_ = std::current_exception();
    }
  }
}

}  // namespace lyapgate
