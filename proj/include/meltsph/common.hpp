/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_COMMON_HPP
#define MELTSPH_COMMON_HPP

#include <Eigen/Core>
#include <Eigen/Dense>

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace meltsph {

template <int D>
using Vec = Eigen::Matrix<double, D, 1>;
template <int D>
using Mat = Eigen::Matrix<double, D, D>;

inline constexpr double pi = 3.14159265358979323846;

/// Thrown on scenario-file or parameter validation failures.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a running simulation produces non-finite state.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, long step) : std::runtime_error(what), step_index(step) {}
  long step_index;
};

inline int worker_thread_count() {
  if (const char* env = std::getenv("MELTSPH_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {

/// Persistent worker pool behind parallel_for; one caller at a time. Workers
/// pull fixed chunks through an atomic cursor, so the index-to-chunk mapping
/// is deterministic and per-index writes stay race-free.
class WorkerPool {
 public:
  static WorkerPool& get() {
    static WorkerPool pool(worker_thread_count() - 1);
    return pool;
  }

  int helpers() const { return static_cast<int>(threads_.size()); }

  template <class Body>
  void run(int n, Body&& body) {
    const int parts = helpers() + 1;
    const int chunk = (n + parts - 1) / parts;
    auto run_part = [&body, chunk, n](int part) {
      const int begin = part * chunk;
      const int end = std::min(n, begin + chunk);
      for (int i = begin; i < end; ++i) body(i);
    };
    {
      std::lock_guard<std::mutex> lk(mutex_);
      job_ = [&run_part](int part) { run_part(part); };
      parts_total_ = parts;
      next_part_ = 1;   // part 0 runs on the calling thread
      parts_done_ = 1;
      ++generation_;
    }
    wake_.notify_all();
    run_part(0);
    std::unique_lock<std::mutex> lk(mutex_);
    idle_.wait(lk, [&] { return parts_done_ == parts_total_ && active_ == 0; });
    job_ = nullptr;
  }

  ~WorkerPool() {
    {
      std::lock_guard<std::mutex> lk(mutex_);
      stop_ = true;
    }
    wake_.notify_all();
    for (auto& t : threads_) t.join();
  }

 private:
  explicit WorkerPool(int workers) {
    for (int t = 0; t < workers; ++t) threads_.emplace_back([this] { worker_loop(); });
  }

  // A worker counts as active from taking a job generation until it leaves
  // the chunk loop; run() returns only once every worker is inactive again,
  // so a straggler can never pick up chunks of a later job.
  void worker_loop() {
    long seen = 0;
    std::unique_lock<std::mutex> lk(mutex_);
    for (;;) {
      wake_.wait(lk, [&] { return stop_ || (job_ && generation_ != seen); });
      if (stop_) return;
      seen = generation_;
      auto job = job_;
      ++active_;
      while (next_part_ < parts_total_) {
        const int part = next_part_++;
        lk.unlock();
        job(part);
        lk.lock();
        ++parts_done_;
      }
      --active_;
      if (parts_done_ == parts_total_ && active_ == 0) idle_.notify_all();
    }
  }

  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_, idle_;
  std::function<void(int)> job_;
  long generation_ = 0;
  int parts_total_ = 0;
  int next_part_ = 0;
  int parts_done_ = 0;
  int active_ = 0;
  bool stop_ = false;
};

}  // namespace detail

/// Chunked parallel loop over [0, n). Each index is processed by exactly one
/// worker, so per-index writes are race-free and results do not depend on the
/// thread count.
template <class Body>
void parallel_for(int n, Body&& body) {
  auto& pool = detail::WorkerPool::get();
  if (pool.helpers() == 0 || n < 4096) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  pool.run(n, body);
}

}  // namespace meltsph

#endif
