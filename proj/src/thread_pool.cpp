#include "parch/thread_pool.hpp"

#include <cassert>

namespace parch {

ThreadPool::ThreadPool(unsigned worker_count)
{
    assert(worker_count >= 1);
    threads_.reserve(worker_count - 1);
    for (unsigned i = 1; i < worker_count; ++i)
        threads_.emplace_back([this, i] { worker_loop(i); });
}

ThreadPool::~ThreadPool()
{
    {
        std::lock_guard lock(mutex_);
        shutdown_ = true;
        ++generation_;
    }
    start_cv_.notify_all();
    for (std::thread& t : threads_)
        t.join();
}

void ThreadPool::run(const std::function<void(unsigned)>& fn)
{
    {
        std::lock_guard lock(mutex_);
        job_ = &fn;
        pending_ = static_cast<unsigned>(threads_.size());
        first_error_ = nullptr;
        ++generation_;
    }
    start_cv_.notify_all();

    try {
        fn(0);
    } catch (...) {
        std::lock_guard lock(mutex_);
        if (!first_error_)
            first_error_ = std::current_exception();
    }

    std::unique_lock lock(mutex_);
    done_cv_.wait(lock, [this] { return pending_ == 0; });
    job_ = nullptr;
    if (first_error_)
        std::rethrow_exception(first_error_);
}

void ThreadPool::worker_loop(unsigned index)
{
    std::uint64_t seen_generation = 0;
    while (true) {
        const std::function<void(unsigned)>* job = nullptr;
        {
            std::unique_lock lock(mutex_);
            start_cv_.wait(lock, [&] { return generation_ != seen_generation; });
            seen_generation = generation_;
            if (shutdown_)
                return;
            job = job_;
        }
        try {
            (*job)(index);
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!first_error_)
                first_error_ = std::current_exception();
        }
        {
            std::lock_guard lock(mutex_);
            if (--pending_ == 0)
                done_cv_.notify_all();
        }
    }
}

} // namespace parch
