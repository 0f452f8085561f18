#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <new>
#include <utility>
#include <vector>

namespace sparse_asm {

/// Process-wide byte counter for buffers allocated through CountingAllocator.
///
/// Tracking is off by default; while off, allocate/deallocate only pay one
/// relaxed atomic load. A MemoryScope turns it on and reports the high-water
/// mark relative to the moment the scope opened.
class AllocationTracker {
public:
    static AllocationTracker& instance();

    void on_allocate(std::size_t bytes) noexcept;
    void on_deallocate(std::size_t bytes) noexcept;

    bool enabled() const noexcept { return enabled_.load(std::memory_order_relaxed); }
    std::int64_t current_bytes() const noexcept { return current_.load(std::memory_order_relaxed); }
    std::int64_t peak_bytes() const noexcept { return peak_.load(std::memory_order_relaxed); }

private:
    friend class MemoryScope;
    AllocationTracker() = default;

    std::atomic<bool> enabled_{false};
    std::atomic<std::int64_t> current_{0};
    std::atomic<std::int64_t> peak_{0};
};

/// Enables tracking for its lifetime. Scopes do not nest; a second scope
/// blocks until the first one closes.
class MemoryScope {
public:
    MemoryScope();
    ~MemoryScope();
    MemoryScope(const MemoryScope&) = delete;
    MemoryScope& operator=(const MemoryScope&) = delete;

    std::int64_t peak_bytes() const noexcept;
    std::int64_t current_bytes() const noexcept;
};

template <class T>
struct CountingAllocator {
    using value_type = T;

    CountingAllocator() = default;
    template <class U>
    constexpr CountingAllocator(const CountingAllocator<U>&) noexcept {}

    [[nodiscard]] T* allocate(std::size_t n) {
        if (n > std::size_t(-1) / sizeof(T)) throw std::bad_array_new_length();
        T* p = std::allocator<T>{}.allocate(n);
        AllocationTracker::instance().on_allocate(n * sizeof(T));
        return p;
    }

    void deallocate(T* p, std::size_t n) noexcept {
        AllocationTracker::instance().on_deallocate(n * sizeof(T));
        std::allocator<T>{}.deallocate(p, n);
    }

    /// Default-initialises on resize(n): working arrays that are fully
    /// overwritten are not zero-filled first. Use assign(n, 0) for zeroed ones.
    template <class U, class... Args>
    void construct(U* p, Args&&... args) {
        if constexpr (sizeof...(Args) == 0)
            ::new (static_cast<void*>(p)) U;
        else
            ::new (static_cast<void*>(p)) U(std::forward<Args>(args)...);
    }

    template <class U>
    bool operator==(const CountingAllocator<U>&) const noexcept { return true; }
};

/// Heap array whose storage is visible to AllocationTracker. Every working
/// buffer of the assembly paths and every CscMatrix array uses it.
template <class T>
using Buffer = std::vector<T, CountingAllocator<T>>;

}  // namespace sparse_asm
