#pragma once

#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dgns {

/// Persistent worker pool with a static range partition. For a fixed worker
/// count the partition of [0,n) is fixed, and all phases write to disjoint
/// slots, so results are bitwise deterministic.
class WorkerPool {
  public:
    explicit WorkerPool(int n_threads = 1);
    ~WorkerPool();
    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    int size() const { return static_cast<int>(workers_.size()) + 1; }

    /// Runs fn(begin, end, chunk_index) over a static partition of [0, n).
    void parallel_for(long n, const std::function<void(long, long, int)>& fn);

  private:
    void worker_loop(int id);

    std::vector<std::thread> workers_;
    std::mutex mu_;
    std::condition_variable cv_work_, cv_done_;
    const std::function<void(long, long, int)>* job_ = nullptr;
    long job_n_ = 0;
    unsigned long generation_ = 0;
    int pending_ = 0;
    bool stop_ = false;
};

}  // namespace dgns
