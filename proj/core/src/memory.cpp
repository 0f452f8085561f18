#include "sparse_asm/memory.hpp"

#include <mutex>

namespace sparse_asm {

namespace {
std::mutex& scope_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

AllocationTracker& AllocationTracker::instance() {
    static AllocationTracker tracker;
    return tracker;
}

void AllocationTracker::on_allocate(std::size_t bytes) noexcept {
    if (!enabled()) return;
    const auto now = current_.fetch_add(std::int64_t(bytes), std::memory_order_relaxed) +
                     std::int64_t(bytes);
    auto peak = peak_.load(std::memory_order_relaxed);
    while (now > peak && !peak_.compare_exchange_weak(peak, now, std::memory_order_relaxed)) {
    }
}

void AllocationTracker::on_deallocate(std::size_t bytes) noexcept {
    if (!enabled()) return;
    current_.fetch_sub(std::int64_t(bytes), std::memory_order_relaxed);
}

MemoryScope::MemoryScope() {
    scope_mutex().lock();
    auto& t = AllocationTracker::instance();
    t.current_.store(0, std::memory_order_relaxed);
    t.peak_.store(0, std::memory_order_relaxed);
    t.enabled_.store(true, std::memory_order_seq_cst);
}

MemoryScope::~MemoryScope() {
    AllocationTracker::instance().enabled_.store(false, std::memory_order_seq_cst);
    scope_mutex().unlock();
}

std::int64_t MemoryScope::peak_bytes() const noexcept {
    return AllocationTracker::instance().peak_bytes();
}

std::int64_t MemoryScope::current_bytes() const noexcept {
    return AllocationTracker::instance().current_bytes();
}

}  // namespace sparse_asm
