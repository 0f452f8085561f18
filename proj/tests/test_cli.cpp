#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "sparse_asm/io.hpp"
#include "test_support.hpp"

using namespace sparse_asm;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("sparse_asm_cli_" + std::string(::testing::UnitTest::GetInstance()
                                                     ->current_test_info()
                                                     ->name()));
        fs::create_directories(dir_);
        write_triplets_matrixmarket(path("example.mtx"), sparse_asm::testing::running_example(), {4, 4});
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    fs::path dir_;
};

}  // namespace

TEST_F(Cli, AssembleRunningExample) {
    const auto r = run({"assemble", "--input", path("example.mtx"), "--output", path("out.mtx")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("L=13 M=4 N=4 nnz=10"), std::string::npos) << r.err;
    const auto f = read_triplets_matrixmarket(path("out.mtx"));
    EXPECT_EQ(f.triplets.size(), 10);
    EXPECT_EQ(f.triplets.sr, sparse_asm::testing::golden_pr);
}

TEST_F(Cli, AssembleDimensionTooSmall) {
    const auto r = run({"assemble", "--input", path("example.mtx"), "--output", path("out.mtx"),
                        "--m", "3"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("DimensionTooSmall"), std::string::npos) << r.err;
}

TEST_F(Cli, AssembleThreadCountsAreByteIdentical) {
    ASSERT_EQ(run({"gen", "--size", "300", "--nnz-row", "20", "--nrep", "3", "--seed", "5",
                   "--out", path("g.mtx")})
                  .code,
              0);
    ASSERT_EQ(run({"assemble", "--input", path("g.mtx"), "--output", path("a1.mtx"), "--threads",
                   "1"})
                  .code,
              0);
    ASSERT_EQ(run({"assemble", "--input", path("g.mtx"), "--output", path("a8.mtx"), "--threads",
                   "8"})
                  .code,
              0);
    ASSERT_EQ(run({"assemble", "--input", path("g.mtx"), "--output", path("as.mtx"), "--serial"})
                  .code,
              0);
    EXPECT_EQ(slurp(path("a1.mtx")), slurp(path("a8.mtx")));
    EXPECT_EQ(slurp(path("a1.mtx")), slurp(path("as.mtx")));
}

TEST_F(Cli, AssemblePruneZeros) {
    write_triplets_matrixmarket(path("z.mtx"), {{1, 1, 2}, {1, 1, 2}, {1.0, -1.0, 3.0}}, {2, 2});
    ASSERT_EQ(run({"assemble", "--input", path("z.mtx"), "--output", path("k.mtx")}).code, 0);
    EXPECT_EQ(read_triplets_matrixmarket(path("k.mtx")).triplets.size(), 2);
    ASSERT_EQ(run({"assemble", "--input", path("z.mtx"), "--output", path("p.mtx"),
                   "--prune-zeros"})
                  .code,
              0);
    EXPECT_EQ(read_triplets_matrixmarket(path("p.mtx")).triplets.size(), 1);
}

TEST_F(Cli, AssembleBadInputs) {
    std::ofstream(path("bad.mtx")) << "%%MatrixMarket matrix coordinate real general\n2 2 1\n0 1 1\n";
    auto r = run({"assemble", "--input", path("bad.mtx"), "--output", path("o.mtx")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("BadIndex"), std::string::npos);

    std::ofstream(path("junk.mtx")) << "hello\n";
    r = run({"assemble", "--input", path("junk.mtx"), "--output", path("o.mtx")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("ParseError"), std::string::npos);

    EXPECT_EQ(run({"assemble", "--input", path("missing.mtx"), "--output", path("o.mtx")}).code, 1);
    EXPECT_EQ(run({"assemble", "--output", path("o.mtx")}).code, 1);
}

TEST_F(Cli, GenIsDeterministic) {
    ASSERT_EQ(run({"gen", "--size", "100", "--nnz-row", "5", "--nrep", "2", "--seed", "9", "--out",
                   path("a.mtx")})
                  .code,
              0);
    ASSERT_EQ(run({"gen", "--size", "100", "--nnz-row", "5", "--nrep", "2", "--seed", "9", "--out",
                   path("b.mtx")})
                  .code,
              0);
    EXPECT_EQ(slurp(path("a.mtx")), slurp(path("b.mtx")));
    EXPECT_EQ(read_triplets_matrixmarket(path("a.mtx")).triplets.size(), 1000);
}

TEST_F(Cli, GenRejectsZeroSize) {
    EXPECT_EQ(run({"gen", "--size", "0", "--nnz-row", "5", "--out", path("a.mtx")}).code, 1);
}

TEST_F(Cli, VerifyRunningExample) {
    const auto r = run({"verify", "--input", path("example.mtx"), "--threads", "1,2,3"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "3 implementations agree, nnz=10\n");
}

TEST_F(Cli, VerifyCorruptFile) {
    std::ofstream(path("bad.mtx")) << "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 x 1\n";
    EXPECT_EQ(run({"verify", "--input", path("bad.mtx")}).code, 1);
}

TEST_F(Cli, VerifyRandom) {
    const auto r = run({"verify", "--random", "25", "--seed", "3", "--threads", "1,4"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "25 random instances verified, 3 implementations agree\n");
    EXPECT_EQ(run({"verify"}).code, 1);
    EXPECT_EQ(run({"verify", "--input", path("example.mtx"), "--random", "3"}).code, 1);
}

TEST_F(Cli, ThreadsFromEnvironment) {
    ::setenv("SPARSE_ASM_THREADS", "0", 1);
    EXPECT_EQ(run({"verify", "--input", path("example.mtx")}).code, 0);
    ::setenv("SPARSE_ASM_THREADS", "3,5", 1);
    const auto b = run({"bench", "--dataset", "1", "--scale", "0.001", "--reps", "1"});
    EXPECT_NE(b.out.find("1,parallel,5,"), std::string::npos) << b.out;
    EXPECT_EQ(run({"assemble", "--input", path("example.mtx"), "--output", path("o.mtx")}).code, 1);
    EXPECT_EQ(run({"assemble", "--input", path("example.mtx"), "--output", path("o.mtx"),
                   "--threads", "2"})
                  .code,
              0);
    ::setenv("SPARSE_ASM_THREADS", "-2", 1);
    EXPECT_EQ(run({"verify", "--input", path("example.mtx")}).code, 1);
    ::setenv("SPARSE_ASM_THREADS", "abc", 1);
    EXPECT_EQ(run({"verify", "--input", path("example.mtx")}).code, 1);
    EXPECT_EQ(run({"gen", "--size", "3", "--nnz-row", "1", "--out", path("g.mtx")}).code, 0);
    ::unsetenv("SPARSE_ASM_THREADS");
}

TEST_F(Cli, BenchWritesCsvAndCostReport) {
    const auto r = run({"bench", "--dataset", "1", "--scale", "0.01", "--reps", "2", "--threads",
                        "1,2", "--out", path("bench.csv"), "--cost-report"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream csv(slurp(path("bench.csv")));
    std::vector<std::string> lines;
    for (std::string line; std::getline(csv, line);) lines.push_back(line);
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], bench_csv_header);
    EXPECT_EQ(lines[1].rfind("1,serial,1,", 0), 0u);
    EXPECT_EQ(lines[3].rfind("1,parallel,2,", 0), 0u);
    EXPECT_NE(r.err.find("stream copy"), std::string::npos);

    if (instrumentation_available()) {
        const std::string cost = slurp(path("bench.cost.csv"));
        EXPECT_EQ(cost.rfind(std::string(cost_csv_header), 0), 0u);
        EXPECT_NE(cost.find("1,serial,1,measured,total,"), std::string::npos);
        EXPECT_NE(cost.find("1,parallel,2,predicted,alloc:S3,"), std::string::npos);
    }
}

TEST_F(Cli, BenchDeskScaleLength) {
    const auto r = run({"bench", "--dataset", "1", "--scale", "0.04", "--reps", "1", "--threads",
                        "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find(",100000,"), std::string::npos) << r.out;
}

TEST_F(Cli, BenchUnknownDataset) {
    const auto r = run({"bench", "--dataset", "7"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("UnknownDataset"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}
