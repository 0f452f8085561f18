#include "sparse_asm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "sparse_asm/oracle.hpp"
#include "sparse_asm/parallel.hpp"
#include "sparse_asm/serial.hpp"
#include "thread_team.hpp"

namespace sparse_asm {

TripletList gen_ransparse(const DatasetSpec& spec) {
    if (spec.siz <= 0 || spec.nnz_row <= 0 || spec.nrep <= 0)
        throw Error(ErrorCode::invalid_argument, "size, nnz-row and nrep must be positive");
    if (spec.length() > max_index)
        throw Error(ErrorCode::invalid_argument, "generated length exceeds the index range");

    const auto block = std::size_t(spec.siz) * std::size_t(spec.nnz_row);
    const auto len = std::size_t(spec.length());
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<index_t> column(1, spec.siz);

    // one siz x nnz_row block in column-major order, then nrep copies
    std::vector<index_t> ii(len), jj(len);
    for (std::size_t k = 0; k < block; ++k) {
        ii[k] = index_t(k % std::size_t(spec.siz)) + 1;
        jj[k] = column(rng);
    }
    for (std::size_t rep = 1; rep < std::size_t(spec.nrep); ++rep) {
        std::copy_n(ii.begin(), block, ii.begin() + std::ptrdiff_t(rep * block));
        std::copy_n(jj.begin(), block, jj.begin() + std::ptrdiff_t(rep * block));
    }

    std::vector<index_t> perm(len);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    TripletList t;
    t.ii.resize(len);
    t.jj.resize(len);
    for (std::size_t k = 0; k < len; ++k) {
        t.ii[k] = ii[std::size_t(perm[k])];
        t.jj[k] = jj[std::size_t(perm[k])];
    }
    t.sr.assign(len, 1.0);
    return t;
}

DatasetSpec dataset_config(int id, double scale, std::uint64_t seed) {
    if (!(scale > 0.0 && scale <= 1.0))
        throw Error(ErrorCode::invalid_argument, "scale must lie in (0, 1]");
    DatasetSpec spec;
    switch (id) {
        case 1: spec = {10'000, 50, 5, seed}; break;
        case 2: spec = {50'000, 50, 1, seed}; break;
        case 3: spec = {50'000, 10, 5, seed}; break;
        default: throw Error(ErrorCode::unknown_dataset, "data set " + std::to_string(id));
    }
    spec.siz = std::max<index_t>(1, index_t(std::lround(double(spec.siz) * scale)));
    return spec;
}

double expected_nnz(index_t siz, index_t nnz_row) {
    const double s = siz;
    return s * s * (1.0 - std::pow(1.0 - 1.0 / s, double(nnz_row)));
}

std::string Impl::name() const {
    switch (kind) {
        case ImplKind::serial: return "serial";
        case ImplKind::parallel: return "parallel";
        case ImplKind::oracle: return "oracle";
    }
    return "unknown";
}

namespace {

using bench_clock = std::chrono::steady_clock;

CscMatrix run_once(const AssemblyRequest& req, const Impl& impl, PhaseTimings* phases) {
    switch (impl.kind) {
        case ImplKind::serial: return assemble_serial(req, phases);
        case ImplKind::parallel: return assemble_parallel(req, impl.threads, phases);
        case ImplKind::oracle: return assemble_oracle(req);
    }
    throw Error(ErrorCode::invalid_argument, "unknown implementation");
}

}  // namespace

std::vector<BenchOutcome> run_bench(const TripletList& triplets, std::span<const Impl> impls,
                                    int reps, int dataset_id) {
    if (reps < 1) throw Error(ErrorCode::invalid_argument, "reps must be >= 1");
    AssemblyRequest req{triplets, std::nullopt, std::nullopt};

    // warm-up doubles as the cross-check; nothing is timed until all agree
    std::vector<CscMatrix> warm;
    warm.reserve(impls.size());
    for (const auto& impl : impls) {
        warm.push_back(run_once(req, impl, nullptr));
        if (warm.size() > 1) {
            if (auto diff = first_difference(warm.front(), warm.back()))
                throw Error(ErrorCode::result_mismatch,
                            impls[0].name() + " vs " + impl.name() + "(" +
                                std::to_string(impl.threads) + "): " + *diff);
        }
    }
    const Dimensions dims = warm.empty() ? Dimensions{} : warm.front().dims;
    const index_t nnz = warm.empty() ? 0 : warm.front().nnz();
    warm.clear();

    std::vector<BenchOutcome> out;
    for (const auto& impl : impls) {
        BenchOutcome o;
        o.record.dataset_id = dataset_id;
        o.record.impl = impl.name();
        o.record.threads = impl.kind == ImplKind::parallel ? impl.threads : 1;
        o.record.reps = reps;
        o.record.L = triplets.size();
        o.record.M = dims.M;
        o.record.N = dims.N;
        o.record.nnz = nnz;

        double sum = 0, best = 0;
        PhaseTimings phases;
        for (int r = 0; r < reps; ++r) {
            const auto t0 = bench_clock::now();
            CscMatrix m = run_once(req, impl, &phases);
            const double dt = std::chrono::duration<double>(bench_clock::now() - t0).count();
            sum += dt;
            best = r == 0 ? dt : std::min(best, dt);
        }
        o.record.mean_seconds = sum / reps;
        o.record.min_seconds = best;
        const double inv = 1.0 / reps;
        o.mean_phases = {phases.pre * inv,   phases.part1 * inv, phases.part2 * inv,
                         phases.part3 * inv, phases.part4 * inv, phases.post * inv};
        out.push_back(std::move(o));
    }

    const auto serial = std::find_if(out.begin(), out.end(),
                                     [](const BenchOutcome& o) { return o.record.impl == "serial"; });
    for (auto& o : out) {
        o.record.speedup_vs_serial =
            serial != out.end() && o.record.mean_seconds > 0
                ? serial->record.mean_seconds / o.record.mean_seconds
                : 0.0;
    }
    return out;
}

std::vector<BenchOutcome> run_bench(const DatasetSpec& spec, std::span<const Impl> impls, int reps,
                                    int dataset_id) {
    return run_bench(gen_ransparse(spec), impls, reps, dataset_id);
}

StreamCopyResult stream_copy_bandwidth(std::size_t n, int p, int reps) {
    if (p < 1 || reps < 1) throw Error(ErrorCode::invalid_argument, "p and reps must be >= 1");
    std::vector<double> a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) b[j] = double(j % 1021) + 0.5;

    auto copy = [&](int workers) {
        detail::parallel_region(workers, [&](int k, detail::Sync&) {
            const auto lo = n * std::size_t(k) / std::size_t(workers);
            const auto hi = n * std::size_t(k + 1) / std::size_t(workers);
            double* __restrict dst = a.data();
            const double* __restrict src = b.data();
            for (std::size_t j = lo; j < hi; ++j) dst[j] = src[j];
        });
    };
    // serial and parallel repetitions alternate so both see the same
    // machine state
    auto timed = [&](int workers) {
        const auto t0 = bench_clock::now();
        copy(workers);
        return std::chrono::duration<double>(bench_clock::now() - t0).count();
    };
    copy(1);
    copy(p);
    StreamCopyResult res;
    for (int r = 0; r < reps; ++r) {
        const double ts = timed(1), tp = timed(p);
        res.serial_seconds = r == 0 ? ts : std::min(res.serial_seconds, ts);
        res.parallel_seconds = r == 0 ? tp : std::min(res.parallel_seconds, tp);
    }
    res.speedup = res.parallel_seconds > 0 ? res.serial_seconds / res.parallel_seconds : 0.0;
    res.verified = a == b;
    return res;
}

}  // namespace sparse_asm
