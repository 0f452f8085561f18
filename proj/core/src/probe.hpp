#pragma once

#include <array>
#include <cstdint>

namespace sparse_asm::detail {

// Access-count hooks compiled into the assembly kernels. NullProbe makes
// every hook an empty inline call, so the production instantiations carry
// no counting code.
//
// Counting rule: one access per distinct array element touched by a loop
// iteration (a read-modify-write, or a read followed by a write of the same
// element, is one access). An access is indirect when its subscript is not
// the loop induction variable; indirect_l marks indirect accesses into
// arrays of length L.

struct NullProbe {
    void phase(int) noexcept {}
    void direct(std::int64_t = 1) noexcept {}
    void indirect(std::int64_t = 1) noexcept {}
    void indirect_l(std::int64_t = 1) noexcept {}
};

struct PartCounts {
    std::int64_t total = 0;
    std::int64_t indirect = 0;
    std::int64_t indirect_l = 0;
};

struct CountingProbe {
    std::array<PartCounts, 4> parts{};
    int current = 0;

    void phase(int part) noexcept { current = part; }
    void direct(std::int64_t n = 1) noexcept { parts[current].total += n; }
    void indirect(std::int64_t n = 1) noexcept {
        parts[current].total += n;
        parts[current].indirect += n;
    }
    void indirect_l(std::int64_t n = 1) noexcept {
        parts[current].total += n;
        parts[current].indirect += n;
        parts[current].indirect_l += n;
    }

    CountingProbe& operator+=(const CountingProbe& o) noexcept {
        for (std::size_t k = 0; k < parts.size(); ++k) {
            parts[k].total += o.parts[k].total;
            parts[k].indirect += o.parts[k].indirect;
            parts[k].indirect_l += o.parts[k].indirect_l;
        }
        return *this;
    }
};

}  // namespace sparse_asm::detail
