#ifndef IGNIS_THREAD_TEAM_HPP
#define IGNIS_THREAD_TEAM_HPP

#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ignis {

/// Persistent worker team running data-parallel row-block loops.
///
/// Work is split into contiguous index blocks, one per worker, so the
/// partitioning (and therefore every cell's arithmetic) is a pure function of
/// (range, worker count) and results do not depend on scheduling order.
class ThreadTeam {
public:
    explicit ThreadTeam(int workers = 1) { start(workers < 1 ? 1 : workers); }

    ThreadTeam(const ThreadTeam&) = delete;
    ThreadTeam& operator=(const ThreadTeam&) = delete;

    ~ThreadTeam() { stop(); }

    int workers() const { return static_cast<int>(threads_.size()) + 1; }

    /// Runs fn(begin, end) over [lo, hi) split into one block per worker.
    /// The calling thread executes block 0; returns after all blocks finish.
    /// The first exception thrown by any block is rethrown here.
    void run(int lo, int hi, const std::function<void(int, int)>& fn) {
        const int n = workers();
        const int span = hi - lo;
        if (span <= 0) return;
        job_ = &fn;
        job_lo_ = lo;
        job_hi_ = hi;
        error_ = nullptr;
        {
            std::lock_guard<std::mutex> lk(mu_);
            pending_ = static_cast<int>(threads_.size());
            ++generation_;
        }
        cv_.notify_all();
        auto [b, e] = block(0, n, lo, span);
        try {
            fn(b, e);
        } catch (...) {
            std::lock_guard<std::mutex> lk(mu_);
            if (!error_) error_ = std::current_exception();
        }
        std::unique_lock<std::mutex> lk(mu_);
        done_cv_.wait(lk, [&] { return pending_ == 0; });
        if (error_) {
            auto err = error_;
            error_ = nullptr;
            std::rethrow_exception(err);
        }
    }

private:
    static std::pair<int, int> block(int rank, int n, int lo, int span) {
        const int base = span / n;
        const int rem = span % n;
        const int b = lo + rank * base + (rank < rem ? rank : rem);
        const int len = base + (rank < rem ? 1 : 0);
        return {b, b + len};
    }

    void start(int workers) {
        for (int r = 1; r < workers; ++r) {
            threads_.emplace_back([this, r] { worker_loop(r); });
        }
    }

    void worker_loop(int rank) {
        long seen = 0;
        for (;;) {
            std::unique_lock<std::mutex> lk(mu_);
            cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
            lk.unlock();
            auto [b, e] = block(rank, workers(), job_lo_, job_hi_ - job_lo_);
            try {
                (*job_)(b, e);
            } catch (...) {
                lk.lock();
                if (!error_) error_ = std::current_exception();
                lk.unlock();
            }
            lk.lock();
            if (--pending_ == 0) done_cv_.notify_all();
        }
    }

    void stop() {
        {
            std::lock_guard<std::mutex> lk(mu_);
            stop_ = true;
        }
        cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    std::vector<std::thread> threads_;
    std::mutex mu_;
    std::condition_variable cv_;
    std::condition_variable done_cv_;
    const std::function<void(int, int)>* job_ = nullptr;
    int job_lo_ = 0;
    int job_hi_ = 0;
    int pending_ = 0;
    long generation_ = 0;
    bool stop_ = false;
    std::exception_ptr error_ = nullptr;
};

} // namespace ignis

#endif
