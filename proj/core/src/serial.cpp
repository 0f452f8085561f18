#include "sparse_asm/serial.hpp"

#include "serial_kernels.hpp"

namespace sparse_asm {

RowCounter count_rows(const TripletList& t, Dimensions dims) {
    detail::NullProbe probe;
    return detail::count_rows(t, dims, probe);
}

RankArray build_rank(const TripletList& t, RowCounter& rc) {
    detail::NullProbe probe;
    return detail::build_rank(t, rc, probe);
}

SerialPlan compress_columns(const TripletList& t, RowCounter&& rc, RankArray&& rank,
                            Dimensions dims) {
    detail::NullProbe probe;
    return detail::compress_columns(t, std::move(rc), std::move(rank), dims, probe);
}

SerialPlan accumulate_columns(SerialPlan&& plan, const TripletList& t) {
    detail::NullProbe probe;
    return detail::accumulate_columns(std::move(plan), t, probe);
}

CscMatrix scatter_serial(SerialPlan&& plan, const TripletList& t, Dimensions dims,
                         index_t capacity_hint) {
    return detail::scatter(std::move(plan), t, dims, capacity_hint);
}

CscMatrix assemble_serial(const AssemblyRequest& req, PhaseTimings* timings) {
    detail::NullProbe probe;
    return detail::assemble_serial(req, timings, probe);
}

}  // namespace sparse_asm
