#include "veclat/thread_pool.hpp"

#include <algorithm>
#include <atomic>

namespace veclat {

ThreadPool::ThreadPool(int threads) : size_(std::max(threads, 1)) {
    workers_.reserve(static_cast<std::size_t>(size_ - 1));
    for (int t = 1; t < size_; ++t)
        workers_.emplace_back([this] { worker_loop(); });
}

ThreadPool::~ThreadPool() {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        stop_ = true;
    }
    work_cv_.notify_all();
    for (auto& w : workers_)
        w.join();
}

void ThreadPool::worker_loop() {
    for (;;) {
        std::function<void()> task;
        {
            std::unique_lock<std::mutex> lock(mutex_);
            work_cv_.wait(lock, [this] { return stop_ || !queue_.empty(); });
            if (queue_.empty()) {
                if (stop_)
                    return;
                continue;
            }
            task = std::move(queue_.front());
            queue_.pop_front();
        }
        task();
    }
}

void ThreadPool::parallel_for(std::int64_t begin, std::int64_t end,
                              const std::function<void(std::int64_t, std::int64_t)>& body) {
    const std::int64_t len = end - begin;
    if (len <= 0)
        return;
    const int chunks = static_cast<int>(std::min<std::int64_t>(size_, len));
    if (chunks <= 1) {
        body(begin, end);
        return;
    }

    struct Completion {
        std::mutex mutex;
        std::condition_variable cv;
        int remaining;
    } done{.mutex = {}, .cv = {}, .remaining = chunks - 1};

    auto chunk_bounds = [&](int c) {
        std::int64_t lo = begin + len * c / chunks;
        std::int64_t hi = begin + len * (c + 1) / chunks;
        return std::pair{lo, hi};
    };

    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (int c = 1; c < chunks; ++c) {
            auto [lo, hi] = chunk_bounds(c);
            queue_.emplace_back([&body, &done, lo, hi] {
                body(lo, hi);
                std::lock_guard<std::mutex> dl(done.mutex);
                if (--done.remaining == 0)
                    done.cv.notify_one();
            });
        }
    }
    work_cv_.notify_all();

    auto [lo, hi] = chunk_bounds(0);
    body(lo, hi);

    std::unique_lock<std::mutex> dl(done.mutex);
    done.cv.wait(dl, [&done] { return done.remaining == 0; });
}

} // namespace veclat
