#include <gtest/gtest.h>

#include <cstring>

#include "sparse_asm/core.hpp"
#include "sparse_asm/oracle.hpp"
#include "test_support.hpp"

using namespace sparse_asm;
using namespace sparse_asm::testing;

TEST(Oracle, RunningExample) {
    const auto m = assemble_oracle({running_example(), std::nullopt, std::nullopt});
    EXPECT_EQ(m.dims, (Dimensions{4, 4}));
    EXPECT_EQ(to_vec(m.jc), golden_jc);
    EXPECT_EQ(to_vec(m.ir), golden_ir);
    EXPECT_EQ(to_vec(m.pr), golden_pr);
}

TEST(Oracle, BroadcastAndExplicitDimensions) {
    auto t = running_example();
    t.sr = {1.0};
    const auto m = assemble_oracle({t, Dimensions{5, 6}, std::nullopt});
    EXPECT_EQ(to_vec(m.jc), (std::vector<index_t>{0, 3, 5, 7, 10, 10, 10}));
    EXPECT_EQ(to_vec(m.pr), (std::vector<double>{2, 1, 1, 1, 1, 2, 2, 1, 1, 1}));
}

TEST(Oracle, Errors) {
    auto code = [](AssemblyRequest req) {
        try {
            assemble_oracle(req);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::result_mismatch;
    };
    EXPECT_EQ(code({{{0}, {1}, {1}}, std::nullopt, std::nullopt}), ErrorCode::bad_index);
    EXPECT_EQ(code({{{1}, {1, 2}, {1}}, std::nullopt, std::nullopt}), ErrorCode::length_mismatch);
    EXPECT_EQ(code({{{3}, {1}, {1}}, Dimensions{2, 2}, std::nullopt}),
              ErrorCode::dimension_too_small);
}

TEST(OracleProperty, MatchesBruteForce) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        const auto req = random_instance(rng, static_cast<ValueKind>(trial % 3), {2'000, 300});
        const auto m = assemble_oracle(req);
        const auto ref = brute_force(req.triplets, req.dims.value_or(max_dims(req.triplets)));
        EXPECT_TRUE(csc_validate(m).empty());
        EXPECT_EQ(to_vec(m.jc), ref.jc);
        EXPECT_EQ(to_vec(m.ir), ref.ir);
        ASSERT_EQ(m.pr.size(), ref.pr.size());
        EXPECT_EQ(std::memcmp(m.pr.data(), ref.pr.data(), ref.pr.size() * sizeof(double)), 0);
    }
}
