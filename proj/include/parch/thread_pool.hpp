#pragma once

#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace parch {

/// Fixed pool of workers for the bulk-synchronous phases of preprocessing.
/// run() hands the same callable to every worker (identified by its index)
/// and blocks until all of them return. The first exception thrown by any
/// worker is rethrown on the calling thread.
class ThreadPool {
  public:
    explicit ThreadPool(unsigned worker_count);
    ~ThreadPool();

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    unsigned size() const { return static_cast<unsigned>(threads_.size()) + 1; }

    /// Executes fn(worker) for worker in [0, size()) and waits. The calling
    /// thread doubles as worker 0, so a pool of size 1 spawns no threads.
    void run(const std::function<void(unsigned)>& fn);

  private:
    void worker_loop(unsigned index);

    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable start_cv_;
    std::condition_variable done_cv_;
    const std::function<void(unsigned)>* job_ = nullptr;
    std::uint64_t generation_ = 0;
    unsigned pending_ = 0;
    bool shutdown_ = false;
    std::exception_ptr first_error_;
};

} // namespace parch
