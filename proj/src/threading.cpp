#include "dgns/threading.hpp"

#include <algorithm>

namespace dgns {

WorkerPool::WorkerPool(int n_threads) {
    const int extra = std::max(0, n_threads - 1);
    workers_.reserve(extra);
    for (int i = 0; i < extra; ++i) workers_.emplace_back([this, i] { worker_loop(i + 1); });
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard<std::mutex> lk(mu_);
        stop_ = true;
    }
    cv_work_.notify_all();
    for (auto& w : workers_) w.join();
}

void WorkerPool::worker_loop(int id) {
    unsigned long seen = 0;
    while (true) {
        const std::function<void(long, long, int)>* job;
        long n;
        {
            std::unique_lock<std::mutex> lk(mu_);
            cv_work_.wait(lk, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
            job = job_;
            n = job_n_;
        }
        const int nt = size();
        const long b = n * id / nt, e = n * (id + 1) / nt;
        if (b < e) (*job)(b, e, id);
        {
            std::lock_guard<std::mutex> lk(mu_);
            if (--pending_ == 0) cv_done_.notify_one();
        }
    }
}

void WorkerPool::parallel_for(long n, const std::function<void(long, long, int)>& fn) {
    const int nt = size();
    if (nt == 1 || n < 2 * nt) {
        if (n > 0) fn(0, n, 0);
        return;
    }
    {
        std::lock_guard<std::mutex> lk(mu_);
        job_ = &fn;
        job_n_ = n;
        pending_ = nt - 1;
        ++generation_;
    }
    cv_work_.notify_all();
    const long e0 = n / nt;
    if (e0 > 0) fn(0, e0, 0);
    std::unique_lock<std::mutex> lk(mu_);
    cv_done_.wait(lk, [&] { return pending_ == 0; });
}

}  // namespace dgns
