#pragma once

#include <barrier>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sparse_asm::detail {

/// Barrier shared by the workers of one parallel region.
class Sync {
public:
    explicit Sync(int workers) : barrier_(workers) {}
    void wait() { barrier_.arrive_and_wait(); }
    void drop() { barrier_.arrive_and_drop(); }

private:
    std::barrier<> barrier_;
};

/// Runs body(worker_id, sync) on p workers, the calling thread being worker 0,
/// and joins them. A worker that throws leaves the barrier so the others can
/// finish; the first exception is rethrown after the join.
template <class Body>
void parallel_region(int p, Body&& body) {
    Sync sync(p);
    std::exception_ptr error;
    std::mutex error_mutex;

    auto run = [&](int k) {
        try {
            body(k, sync);
        } catch (...) {
            {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
            sync.drop();
        }
    };

    {
        std::vector<std::jthread> team;
        team.reserve(std::size_t(p) - 1);
        for (int k = 1; k < p; ++k) team.emplace_back(run, k);
        run(0);
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace sparse_asm::detail
