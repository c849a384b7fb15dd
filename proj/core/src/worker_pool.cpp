#include "blockkm/worker_pool.hpp"

#include <algorithm>
#include <atomic>

#include "blockkm/errors.hpp"

namespace blockkm {

WorkerPool::WorkerPool(std::size_t workers) {
  if (workers == 0) throw InvalidArgument("worker count must be >= 1");
  threads_.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) threads_.emplace_back([this] { worker_loop(); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  work_ready_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::submit(std::function<void()> task) {
  {
    std::lock_guard lock(mutex_);
    queue_.push_back(std::move(task));
    ++in_flight_;
  }
  work_ready_.notify_one();
}

void WorkerPool::wait_idle() {
  std::unique_lock lock(mutex_);
  idle_.wait(lock, [this] { return in_flight_ == 0; });
}

void WorkerPool::worker_loop() {
  for (;;) {
    std::function<void()> task;
    {
      std::unique_lock lock(mutex_);
      work_ready_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
      if (queue_.empty()) return;
      task = std::move(queue_.front());
      queue_.pop_front();
    }
    task();
    {
      std::lock_guard lock(mutex_);
      if (--in_flight_ == 0) idle_.notify_all();
    }
  }
}

void parallel_for_index(std::size_t count, std::size_t workers,
                        const std::function<void(std::size_t)>& fn) {
  if (workers == 0) throw InvalidArgument("worker count must be >= 1");
  if (count == 0) return;

  std::vector<std::exception_ptr> errors(count);
  std::atomic<bool> failed{false};
  {
    WorkerPool pool(std::min(workers, count));
    for (std::size_t i = 0; i < count; ++i) {
      pool.submit([&, i] {
        if (failed.load(std::memory_order_acquire)) return;
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
          failed.store(true, std::memory_order_release);
        }
      });
    }
    pool.wait_idle();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace blockkm
