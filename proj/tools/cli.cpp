#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "sparse_asm/sparse_asm.hpp"

namespace sparse_asm::cli {

namespace {

using steady = std::chrono::steady_clock;
namespace fs = std::filesystem;

constexpr const char* threads_env = "SPARSE_ASM_THREADS";

double seconds_since(steady::time_point t0) {
    return std::chrono::duration<double>(steady::now() - t0).count();
}

// SPARSE_ASM_THREADS: comma-separated non-negative worker counts, used
// when --threads is absent.
std::vector<int> env_threads() {
    const char* raw = std::getenv(threads_env);
    std::vector<int> out;
    if (!raw || !*raw) return out;
    std::string_view rest(raw);
    while (true) {
        const auto comma = rest.find(',');
        const std::string_view tok = rest.substr(0, comma);
        int v = -1;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || v < 0)
            throw Error(ErrorCode::invalid_argument,
                        std::string(threads_env) + "='" + raw +
                            "': expected non-negative worker counts separated by commas");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<int> thread_list(std::vector<int> requested) {
    if (requested.empty()) requested.push_back(resolve_thread_count(0));
    for (int& p : requested) p = resolve_thread_count(p);
    return requested;
}

struct AssembleArgs {
    std::string input, output;
    index_t m = 0, n = 0;
    int threads = 0;
    bool serial = false;
    bool prune = false;
};

int cmd_assemble(const AssembleArgs& a, bool have_m, bool have_n, std::ostream& err) {
    const TripletFile file = read_triplets_matrixmarket(a.input);
    AssemblyRequest req{file.triplets, Dimensions{have_m ? a.m : file.dims.M,
                                                  have_n ? a.n : file.dims.N},
                        std::nullopt};

    AssembleOptions options;
    options.threads = a.threads;
    options.force_serial = a.serial;
    const auto t0 = steady::now();
    CscMatrix m = assemble(req, options);
    if (a.prune) m = prune_explicit_zeros(m);
    const double elapsed = seconds_since(t0);

    write_csc_matrixmarket(a.output, m);
    err << "L=" << req.triplets.size() << " M=" << m.dims.M << " N=" << m.dims.N
        << " nnz=" << m.nnz() << " elapsed=" << std::setprecision(6) << elapsed << "s\n";
    return exit_ok;
}

struct GenArgs {
    index_t size = 0, nnz_row = 0, nrep = 1;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& err) {
    const DatasetSpec spec{a.size, a.nnz_row, a.nrep, a.seed};
    const TripletList t = gen_ransparse(spec);
    write_triplets_matrixmarket(a.out, t, {a.size, a.size});
    err << "wrote " << t.size() << " triplets (" << a.size << "x" << a.size << ") to " << a.out
        << "\n";
    return exit_ok;
}

// Random instances for the fuzz mode: a pool of (row, column) pairs drawn
// with replacement, so duplicate density varies per instance.
AssemblyRequest random_request(std::mt19937_64& rng) {
    std::uniform_int_distribution<index_t> dim(1, 300), len(0, 5'000);
    const index_t M = dim(rng), N = dim(rng), L = len(rng);
    const double dup = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto pool = std::max<index_t>(1, index_t(std::ceil(double(L) * (1.0 - dup))));

    std::uniform_int_distribution<index_t> row(1, M), col(1, N), pick(0, pool - 1);
    std::vector<std::pair<index_t, index_t>> pairs(static_cast<std::size_t>(pool));
    for (auto& p : pairs) p = {row(rng), col(rng)};

    std::normal_distribution<double> value(0.0, 100.0);
    std::bernoulli_distribution zero(0.05);
    AssemblyRequest req;
    for (index_t k = 0; k < L; ++k) {
        const auto& p = pairs[std::size_t(pick(rng))];
        req.triplets.ii.push_back(p.first);
        req.triplets.jj.push_back(p.second);
        req.triplets.sr.push_back(zero(rng) ? 0.0 : value(rng));
    }
    if (std::bernoulli_distribution(0.5)(rng)) req.dims = Dimensions{M, N};
    return req;
}

// Oracle, serial and parallel (at every p) against each other. Returns a
// description of the first disagreement.
std::optional<std::string> cross_check(const AssemblyRequest& req, const std::vector<int>& threads,
                                       index_t& nnz) {
    const CscMatrix ref = assemble_oracle(req);
    nnz = ref.nnz();
    if (auto d = first_difference(ref, assemble_serial(req))) return "serial vs oracle: " + *d;
    for (int p : threads) {
        if (auto d = first_difference(ref, assemble_parallel(req, p)))
            return "parallel(p=" + std::to_string(p) + ") vs oracle: " + *d;
    }
    return std::nullopt;
}

struct VerifyArgs {
    std::string input;
    int random = 0;
    std::uint64_t seed = 1;
    std::vector<int> threads;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    const auto threads = thread_list(a.threads);
    index_t nnz = 0;
    if (!a.input.empty()) {
        const TripletFile file = read_triplets_matrixmarket(a.input);
        const AssemblyRequest req{file.triplets, file.dims, std::nullopt};
        if (auto diff = cross_check(req, threads, nnz)) {
            err << "mismatch: " << *diff << "\n";
            return exit_mismatch;
        }
        out << "3 implementations agree, nnz=" << nnz << "\n";
        return exit_ok;
    }

    std::mt19937_64 rng(a.seed);
    for (int k = 0; k < a.random; ++k) {
        const AssemblyRequest req = random_request(rng);
        if (auto diff = cross_check(req, threads, nnz)) {
            err << "mismatch in random instance " << k << " (seed " << a.seed << "): " << *diff
                << "\n";
            return exit_mismatch;
        }
    }
    out << a.random << " random instances verified, 3 implementations agree\n";
    return exit_ok;
}

struct BenchArgs {
    int dataset = 1;
    double scale = 1.0;
    int reps = 5;
    std::uint64_t seed = 1;
    std::vector<int> threads;
    std::string out;
    bool cost_report = false;
};

void report_phases(const std::vector<BenchOutcome>& results, std::ostream& err) {
    err << std::fixed << std::setprecision(4);
    for (const auto& r : results) {
        const PhaseTimings& t = r.mean_phases;
        const double total = t.total();
        if (total <= 0) continue;
        err << r.record.impl << "(p=" << r.record.threads << ") phase share %: pre "
            << 100 * t.pre / total << ", part1 " << 100 * t.part1 / total << ", part2 "
            << 100 * t.part2 / total << ", part3 " << 100 * t.part3 / total << ", part4 "
            << 100 * t.part4 / total << ", post " << 100 * t.post / total << "\n";
    }
    bool monotone = true;
    double prev = 0;
    for (const auto& r : results) {
        if (r.record.impl != "parallel") continue;
        monotone = monotone && r.record.speedup_vs_serial >= prev;
        prev = r.record.speedup_vs_serial;
    }
    err << "speedup " << (monotone ? "is" : "is not") << " monotone in the thread list\n";
    err.unsetf(std::ios::floatfield);
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    const auto threads = thread_list(a.threads);
    const DatasetSpec spec = dataset_config(a.dataset, a.scale, a.seed);
    const TripletList t = gen_ransparse(spec);
    err << "dataset " << a.dataset << ": siz " << spec.siz << ", L " << t.size() << "\n";

    std::vector<Impl> impls{{ImplKind::serial, 1}};
    for (int p : threads) impls.push_back({ImplKind::parallel, p});
    const auto results = run_bench(t, impls, a.reps, a.dataset);

    std::vector<BenchRecord> rows;
    for (const auto& r : results) rows.push_back(r.record);
    if (a.out.empty())
        write_bench_csv(out, rows);
    else
        write_bench_csv(fs::path(a.out), rows);
    report_phases(results, err);

    const int pmax = *std::max_element(threads.begin(), threads.end());
    const auto copy = stream_copy_bandwidth(std::size_t(t.size()) * 2, pmax);
    err << "stream copy p=" << pmax << ": speedup " << copy.speedup
        << (copy.verified ? "" : " (copy check failed)") << "\n";

    if (a.cost_report) {
        const AssemblyRequest req{t, std::nullopt, std::nullopt};
        const CscMatrix m = assemble_serial(req);
        const std::int64_t L = t.size(), M = m.dims.M, N = m.dims.N, nnz = m.nnz();
        std::vector<CostRecord> cost;
        cost.push_back({a.dataset, "serial", 1, "predicted", predict_serial_cost(L, M, N, nnz)});
        cost.push_back({a.dataset, "serial", 1, "measured", measure_serial_cost(req)});
        for (int p : threads) {
            cost.push_back(
                {a.dataset, "parallel", p, "predicted", predict_parallel_cost(L, M, N, nnz, p)});
            cost.push_back({a.dataset, "parallel", p, "measured", measure_parallel_cost(req, p)});
        }
        if (a.out.empty()) {
            write_cost_csv(out, cost);
        } else {
            fs::path path(a.out);
            path.replace_extension(".cost.csv");
            write_cost_csv(path, cost);
            err << "cost report written to " << path.string() << "\n";
        }
    }
    return exit_ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sparse matrix assembly from (row, column, value) triplets"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sparse_asm 1.0.0");

    AssembleArgs as;
    auto* assemble_cmd = app.add_subcommand("assemble", "Assemble a MatrixMarket triplet file");
    assemble_cmd->add_option("--input", as.input, "Triplet file")->required();
    assemble_cmd->add_option("--output", as.output, "Output file (MatrixMarket, CSC order)")
        ->required();
    auto* opt_m = assemble_cmd->add_option("--m", as.m, "Row count")->check(CLI::NonNegativeNumber);
    auto* opt_n =
        assemble_cmd->add_option("--n", as.n, "Column count")->check(CLI::NonNegativeNumber);
    auto* opt_threads = assemble_cmd->add_option("--threads", as.threads, "Worker count (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    assemble_cmd->add_flag("--serial", as.serial, "Use the serial algorithm");
    assemble_cmd->add_flag("--prune-zeros", as.prune, "Drop stored entries equal to zero");

    GenArgs gs;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random benchmark triplet file");
    gen_cmd->add_option("--size", gs.size, "Matrix dimension")->required();
    gen_cmd->add_option("--nnz-row", gs.nnz_row, "Column draws per row")->required();
    gen_cmd->add_option("--nrep", gs.nrep, "Pattern repetitions")->capture_default_str();
    gen_cmd->add_option("--seed", gs.seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("--out", gs.out, "Output file")->required();

    VerifyArgs vs;
    auto* verify_cmd = app.add_subcommand("verify", "Cross-check oracle, serial and parallel");
    auto* opt_input = verify_cmd->add_option("--input", vs.input, "Triplet file");
    auto* opt_random =
        verify_cmd->add_option("--random", vs.random, "Number of random instances instead")
            ->check(CLI::PositiveNumber);
    opt_input->excludes(opt_random);
    verify_cmd->add_option("--seed", vs.seed, "Seed for --random")->capture_default_str();
    auto* opt_vthreads = verify_cmd->add_option("--threads", vs.threads, "Worker counts, e.g. 1,2,4")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);

    BenchArgs bs;
    auto* bench_cmd = app.add_subcommand("bench", "Time the assembly on a standard data set");
    bench_cmd->add_option("--dataset", bs.dataset, "Data set 1, 2 or 3")->required();
    bench_cmd->add_option("--scale", bs.scale, "Size factor in (0, 1]")->capture_default_str();
    bench_cmd->add_option("--reps", bs.reps, "Timed repetitions")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bs.seed, "Generator seed")->capture_default_str();
    auto* opt_bthreads = bench_cmd->add_option("--threads", bs.threads, "Worker counts, e.g. 1,2,4,8")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--out", bs.out, "CSV file (default: standard output)");
    bench_cmd->add_flag("--cost-report", bs.cost_report,
                        "Also write instrumented access and allocation counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input_error;
    }

    try {
        if (*assemble_cmd && opt_threads->count() == 0) {
            if (const auto env = env_threads(); !env.empty()) {
                if (env.size() != 1)
                    throw Error(ErrorCode::invalid_argument,
                                std::string(threads_env) + " must hold one count for assemble");
                as.threads = env.front();
            }
        }
        if (opt_vthreads->count() == 0 && *verify_cmd) vs.threads = env_threads();
        if (opt_bthreads->count() == 0 && *bench_cmd) bs.threads = env_threads();

        if (*assemble_cmd) return cmd_assemble(as, opt_m->count() > 0, opt_n->count() > 0, err);
        if (*gen_cmd) return cmd_gen(gs, err);
        if (*verify_cmd) {
            if (vs.input.empty() && vs.random == 0) {
                err << "verify: one of --input or --random is required\n";
                return exit_input_error;
            }
            return cmd_verify(vs, out, err);
        }
        if (*bench_cmd) return cmd_bench(bs, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::result_mismatch ? exit_mismatch : exit_input_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    return exit_input_error;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"sparse_asm"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(int(argv.size()), argv.data(), out, err);
}

}  // namespace sparse_asm::cli
