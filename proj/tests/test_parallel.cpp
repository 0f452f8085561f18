#include <gtest/gtest.h>

#include "sparse_asm/core.hpp"
#include "sparse_asm/parallel.hpp"
#include "sparse_asm/serial.hpp"
#include "test_support.hpp"

using namespace sparse_asm;
using namespace sparse_asm::testing;

namespace {

const Dimensions example_dims{4, 4};

std::vector<index_t> span_vec(std::span<const index_t> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(Partition, BlockRangesCoverWithoutOverlap) {
    for (index_t n : {0, 1, 7, 13, 1000}) {
        for (int p : {1, 2, 3, 8, 20}) {
            index_t next = 0;
            for (int k = 0; k < p; ++k) {
                const Range r = block_range(n, k, p);
                EXPECT_EQ(r.begin, next);
                EXPECT_GE(r.size(), 0);
                next = r.end;
            }
            EXPECT_EQ(next, n);
        }
    }
}

TEST(Partition, RowRangesAreUnitOffset) {
    const WorkerPartition part{13, 4, 3};
    EXPECT_EQ(part.row_range(0).begin, 1);
    EXPECT_EQ(part.row_range(0).end, 2);
    EXPECT_EQ(part.row_range(1).begin, 2);
    EXPECT_EQ(part.row_range(2).end, 5);
    EXPECT_EQ(part.elements(2).end, 13);
}

TEST(Partition, NoOverflowAtLargeSizes) {
    const Range r = block_range(max_index, 7, 8);
    EXPECT_EQ(r.end, max_index);
    EXPECT_GT(r.begin, 0);
}

TEST(ParallelPhases, CountersOnRunningExample) {
    const auto t = running_example();
    RowCounters rc = count_rows_parallel(t, example_dims, 2);
    // worker 0: elements 0..5, rows {3,4,1,3,2,1}; worker 1: elements 6..12
    EXPECT_EQ(span_vec(rc.worker(0)), (std::vector<index_t>{0, 3, 5, 9, 13}));
    // entry M of the private counters is never used
    EXPECT_EQ(span_vec(rc.worker(1).first(4)), (std::vector<index_t>{2, 4, 7, 10}));
    EXPECT_EQ(span_vec(rc.worker(2).first(4)), (std::vector<index_t>{3, 2, 4, 4}));

    RankArray rank = build_rank_parallel(t, rc, 2);
    EXPECT_EQ(to_vec(rank.rank), (std::vector<index_t>{2, 5, 12, 4, 10, 0, 3, 9, 11, 1, 6, 7, 8}));
    EXPECT_EQ(rc.row_end(1), 3);
    EXPECT_EQ(rc.row_end(2), 5);
    EXPECT_EQ(rc.row_end(3), 9);
    EXPECT_EQ(rc.row_end(4), 13);

    ParallelPlan plan =
        compress_and_accumulate_parallel(t, std::move(rank), std::move(rc), example_dims, 2);
    EXPECT_EQ(to_vec(plan.jc), golden_jc);
    // irankP[k] = irank[rank[k]] with the serial irank 5 6 0 8 1 0 9 6 2 5 3 4 7
    EXPECT_EQ(to_vec(plan.irankP), (std::vector<index_t>{0, 0, 7, 1, 3, 5, 8, 5, 4, 6, 9, 6, 2}));

    const auto m = scatter_parallel(std::move(plan), t);
    EXPECT_EQ(to_vec(m.jc), golden_jc);
    EXPECT_EQ(to_vec(m.ir), golden_ir);
    EXPECT_EQ(to_vec(m.pr), golden_pr);
}

TEST(ParallelAssembly, GoldenForManyWorkerCounts) {
    const AssemblyRequest req{running_example(), std::nullopt, std::nullopt};
    for (int p = 1; p <= 20; ++p) {
        const auto m = assemble_parallel(req, p);
        EXPECT_EQ(to_vec(m.jc), golden_jc) << p;
        EXPECT_EQ(to_vec(m.ir), golden_ir) << p;
        EXPECT_EQ(to_vec(m.pr), golden_pr) << p;
    }
}

TEST(ParallelAssembly, EdgeCases) {
    for (int p : {1, 3, 8}) {
        const auto e = assemble_parallel({}, p);
        EXPECT_EQ(to_vec(e.jc), (std::vector<index_t>{0}));
        const auto d = assemble_parallel({{}, Dimensions{5, 3}, std::nullopt}, p);
        EXPECT_EQ(to_vec(d.jc), (std::vector<index_t>{0, 0, 0, 0}));

        const auto one = assemble_parallel({{{3}, {2}, {1.25}}, std::nullopt, std::nullopt}, p);
        EXPECT_EQ(to_vec(one.ir), (std::vector<index_t>{2}));
        EXPECT_EQ(to_vec(one.pr), (std::vector<double>{1.25}));

        auto t = running_example();
        t.sr = {2.0};
        const AssemblyRequest b{t, Dimensions{9, 4}, index_t{64}};
        EXPECT_TRUE(bit_identical(assemble_parallel(b, p), assemble_serial(b)));
    }
}

TEST(ParallelAssembly, Errors) {
    auto code = [](AssemblyRequest req, int p) {
        try {
            assemble_parallel(req, p);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::result_mismatch;
    };
    const AssemblyRequest ok{running_example(), std::nullopt, std::nullopt};
    EXPECT_EQ(code(ok, 0), ErrorCode::invalid_argument);
    EXPECT_EQ(code({{{1, 0, 1}, {1, 1, 1}, {1, 1, 1}}, std::nullopt, std::nullopt}, 2),
              ErrorCode::bad_index);
    EXPECT_EQ(code({{{1, 1}, {1}, {1, 1}}, std::nullopt, std::nullopt}, 2),
              ErrorCode::length_mismatch);
    EXPECT_EQ(code({running_example(), Dimensions{3, 4}, std::nullopt}, 3),
              ErrorCode::dimension_too_small);
}

TEST(FindMaxParallel, AgreesWithSerialConversion) {
    std::vector<double> raw;
    for (int k = 0; k < 1000; ++k) raw.push_back(double((k * 7919) % 577 + 1));
    const auto s = convert_indices(raw);
    for (int p : {1, 2, 3, 8}) {
        const auto c = find_max_parallel(raw, p);
        EXPECT_EQ(c.indices, s.indices);
        EXPECT_EQ(c.max, s.max);
    }
    raw[600] = 2.5;
    raw[900] = 0.0;
    for (int p : {1, 4}) {
        try {
            find_max_parallel(raw, p);
            ADD_FAILURE();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::bad_index);
            EXPECT_NE(std::string(e.what()).find("position 600"), std::string::npos) << e.what();
        }
    }
}

TEST(Dispatcher, SmallInputsTakeSerialPath) {
    EXPECT_EQ(resolve_thread_count(3), 3);
    EXPECT_GE(resolve_thread_count(0), 1);
    const AssemblyRequest req{running_example(), std::nullopt, std::nullopt};
    const auto serial = assemble_serial(req);
    EXPECT_TRUE(bit_identical(assemble(req, {4, false, 10'000}), serial));
    EXPECT_TRUE(bit_identical(assemble(req, {4, false, 0}), serial));
    EXPECT_TRUE(bit_identical(assemble(req, {4, true, 0}), serial));
}

TEST(ParallelProperty, BitIdenticalToSerial) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        const auto req = random_instance(rng, static_cast<ValueKind>(trial % 3), {5'000, 500});
        const auto serial = assemble_serial(req);
        for (int p : {1, 2, 3, 4, 8}) {
            const auto m = assemble_parallel(req, p);
            const auto diff = first_difference(serial, m);
            EXPECT_FALSE(diff.has_value()) << "trial " << trial << " p " << p << ": " << *diff;
        }
    }
}

TEST(ParallelProperty, MoreWorkersThanRows) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto req = random_instance(rng, ValueKind::reals, {400, 3});
        const auto serial = assemble_serial(req);
        for (int p : {4, 8, 16}) EXPECT_TRUE(bit_identical(assemble_parallel(req, p), serial));
    }
}
