#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace veclat {

// Fixed-size worker pool. parallel_for splits [begin, end) into at most
// size() contiguous chunks; the caller runs the first chunk and blocks until
// the workers finish the rest. Chunk boundaries depend only on the range and
// the pool size, so index-partitioned writes stay deterministic.
class ThreadPool {
public:
    explicit ThreadPool(int threads = 1);
    ~ThreadPool();

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    int size() const { return size_; }

    /// body(chunk_begin, chunk_end) over a static partition of [begin, end).
    void parallel_for(std::int64_t begin, std::int64_t end,
                      const std::function<void(std::int64_t, std::int64_t)>& body);

private:
    void worker_loop();

    int size_ = 1;
    std::vector<std::thread> workers_;
    std::mutex mutex_;
    std::condition_variable work_cv_;
    std::deque<std::function<void()>> queue_;
    bool stop_ = false;
};

} // namespace veclat
