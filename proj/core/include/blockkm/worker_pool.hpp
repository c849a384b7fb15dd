#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace blockkm {

/// Fixed-size FIFO thread pool. Tasks start in submission order; wait_idle()
/// blocks until every submitted task has finished.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const noexcept { return threads_.size(); }

  void submit(std::function<void()> task);
  void wait_idle();

 private:
  void worker_loop();

  std::mutex mutex_;
  std::condition_variable work_ready_;
  std::condition_variable idle_;
  std::deque<std::function<void()>> queue_;
  std::size_t in_flight_ = 0;
  bool stopping_ = false;
  std::vector<std::thread> threads_;
};

/// Runs fn(0) .. fn(count-1) on `workers` threads, dispatching indices in
/// ascending order. Once a call throws, indices not yet started are skipped;
/// after all running calls finish, the exception from the lowest failing
/// index is rethrown.
void parallel_for_index(std::size_t count, std::size_t workers,
                        const std::function<void(std::size_t)>& fn);

}  // namespace blockkm
