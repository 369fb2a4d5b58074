#include "fpsum/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "fpsum/rng.hpp"

#include "fpsum/svg.hpp"

namespace fpsum {

namespace {

// Stream tags keep generator draws, tree shuffles, and trial roundings on
// disjoint RNG streams of the same user seed.
constexpr std::uint64_t kUniformStream = 0x756e6966;
constexpr std::uint64_t kNormalStream = 0x6e6f726d;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << content;
}

std::vector<long> make_grid(const ExperimentConfig& cfg) {
    if (cfg.grid_start < 1 || cfg.grid_step < 1 || cfg.grid_stop < cfg.grid_start)
        throw std::invalid_argument("grid must be start:step:stop with start>=1, step>=1");
    std::vector<long> grid;
    for (long n = cfg.grid_start; n <= cfg.grid_stop; n += cfg.grid_step) grid.push_back(n);
    return grid;
}

std::vector<WideReal> generate(const ExperimentConfig& cfg, long n) {
    if (cfg.generator == "uniform_shifted") return gen_uniform_shifted(cfg.m, n, cfg.seed, cfg.fmt);
    if (cfg.generator == "normal") return gen_normal(n, cfg.seed, cfg.fmt);
    throw std::invalid_argument("unknown generator " + cfg.generator);
}

SumTree make_tree(const std::string& name, int n, std::uint64_t seed) {
    if (name == "sequential") return SumTree::sequential(n);
    if (name == "pairwise") return SumTree::pairwise(n);
    if (name == "random") return SumTree::random(n, seed);
    throw std::invalid_argument("unknown tree " + name);
}

std::string fraction_str(int holds, int trials) {
    if (trials <= 0) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(holds) / trials);
    return buf;
}

std::string prob_str(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", p);
    return buf;
}

}  // namespace

std::vector<WideReal> gen_uniform_shifted(double m, long n, std::uint64_t seed,
                                          const FpFormat& fmt) {
    if (m < 0) throw std::invalid_argument("gen_uniform_shifted: m must be nonnegative");
    if (n < 0) throw std::invalid_argument("gen_uniform_shifted: n must be nonnegative");
    RngStream rng(seed, kUniformStream);
    Rounder rnd(fmt, RoundingSpec{});
    std::vector<WideReal> x;
    x.reserve(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i)
        x.push_back(rnd.round(WideReal(m + rng.next_unit()), false).value);
    return x;
}

std::vector<WideReal> gen_normal(long n, std::uint64_t seed, const FpFormat& fmt) {
    if (n < 0) throw std::invalid_argument("gen_normal: n must be nonnegative");
    RngStream rng(seed, kNormalStream);
    Rounder rnd(fmt, RoundingSpec{});
    std::vector<WideReal> x;
    x.reserve(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) x.push_back(rnd.round(WideReal(rng.next_gauss()), false).value);
    return x;
}

WideReal choose_shift(std::span<const WideReal> x, const FpFormat& fmt) {
    if (x.empty()) throw std::invalid_argument("choose_shift: empty input");
    WideReal lo = x[0], hi = x[0];
    for (const WideReal& v : x) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    }
    Rounder rnd(fmt, RoundingSpec{});
    return rnd.round((lo + hi) / WideReal(2.0), false).value;
}

void parallel_for(int jobs, long count, const std::function<void(long)>& fn) {
    if (count <= 0) return;
    long threads = jobs > 0 ? jobs : static_cast<long>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min(threads, count);
    if (threads == 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next(0);
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (long t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            try {
                for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                next.store(count);  // wind the other workers down
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<ResultRow> run_figure(const ExperimentConfig& cfg) {
    std::vector<long> grid = make_grid(cfg);
    std::vector<Algorithm> algos = cfg.algorithms;
    if (algos.empty()) {
        if (cfg.figure == "fig1")
            algos = {Algorithm::General, Algorithm::Shifted};
        else if (cfg.figure == "fig2")
            algos = {Algorithm::General, Algorithm::Shifted, Algorithm::Compensated};
        else if (cfg.figure == "fig3")
            algos = {Algorithm::General, Algorithm::Compensated};
        else
            throw std::invalid_argument("unknown figure " + cfg.figure);
    }
    // Bound column attachment: fig1 plots the shifted relative bound, fig3
    // the compensated one, fig2 has no bound column.
    const bool bound_on_shifted = cfg.figure == "fig1";
    const bool bound_on_comp = cfg.figure == "fig3";

    std::vector<WideReal> x_max = generate(cfg, grid.back());
    std::vector<std::vector<ResultRow>> slots(grid.size());

    parallel_for(cfg.jobs, static_cast<long>(grid.size()), [&](long gi) {
        const long n = grid[static_cast<size_t>(gi)];
        std::span<const WideReal> x(x_max.data(), static_cast<size_t>(n));
        const WideReal s = exact_sum(x);
        SumTree tree = SumTree::sequential(static_cast<int>(n));
        std::vector<ResultRow>& out = slots[static_cast<size_t>(gi)];
        for (Algorithm algo : algos) {
            ResultRow row;
            row.n = n;
            row.algorithm = algorithm_name(algo);
            row.fmt = cfg.fmt.name;
            row.seed = cfg.seed;
            RunTrace tr;
            switch (algo) {
                case Algorithm::General:
                    tr = general_sum(tree, x, cfg.fmt, RoundingSpec{}, false);
                    break;
                case Algorithm::Shifted: {
                    WideReal c = choose_shift(x, cfg.fmt);
                    row.c = c;
                    row.c_defined = true;
                    tr = shifted_sum(tree, x, c, cfg.fmt, RoundingSpec{}, false);
                    if (bound_on_shifted && !s.is_zero()) {
                        row.bound_id = "rel_bound_shifted";
                        row.bound_value = relative_bound_shifted(x, c, cfg.fmt, cfg.delta_fail);
                        row.bound_defined = true;
                    }
                    break;
                }
                case Algorithm::Compensated:
                    tr = compensated_sum(x, cfg.fmt, RoundingSpec{}, false);
                    if (bound_on_comp && !s.is_zero()) {
                        row.bound_id = "rel_bound_comp";
                        row.bound_value = relative_bound_comp(x, cfg.fmt, cfg.delta_fail);
                        row.bound_defined = true;
                    }
                    break;
            }
            if (!s.is_zero()) {
                row.rel_error = abs(tr.e_n) / abs(s);
                row.rel_error_defined = true;
            }
            out.push_back(std::move(row));
        }
    });

    std::vector<ResultRow> rows;
    for (auto& slot : slots)
        for (auto& row : slot) rows.push_back(std::move(row));
    if (!cfg.out_csv.empty()) write_file(cfg.out_csv, rows_to_csv(rows));
    if (!cfg.out_svg.empty()) write_file(cfg.out_svg, render_chart_svg(rows, cfg.figure));
    return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::string out = "n,algorithm,rel_error,bound_id,bound_value,fmt,seed,c\n";
    for (const ResultRow& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += r.algorithm;
        out += ',';
        out += r.rel_error_defined ? r.rel_error.dec_string(16) : std::string("nan");
        out += ',';
        out += r.bound_id;
        out += ',';
        if (r.bound_defined) out += r.bound_value.dec_string(16);
        out += ',';
        out += r.fmt;
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        if (r.c_defined) out += r.c.hex_string();
        out += '\n';
    }
    return out;
}

namespace {

struct BoundTask {
    std::string id;
    Algorithm algo;
    double target;
    WideReal value;
    bool valid;
};

}  // namespace

std::vector<CoverageRow> run_coverage(const ExperimentConfig& cfg) {
    const int n = cfg.n;
    if (n < 1) throw std::invalid_argument("run_coverage: n must be >= 1");
    const FpFormat& fmt = cfg.fmt;
    const double d = cfg.delta_fail, et = cfg.eta_fail;
    const RoundingMode sr = RoundingMode::StochasticNearness;

    SumTree tree = make_tree(cfg.tree, n, cfg.seed);
    std::vector<WideReal> x = generate(cfg, n);
    std::span<const WideReal> xs(x.data(), x.size());
    const int h = tree.height();

    // Everything a bound needs is fixed by the config, so each bound value is
    // computed once; trials only re-roll the roundings.
    std::vector<WideReal> node_partials = tree.exact_partial_sums(xs);
    std::span<const WideReal> internal(node_partials.data() + 2, n >= 2 ? static_cast<size_t>(n - 1) : 0);
    WideReal c = choose_shift(xs, fmt);
    std::vector<WideReal> prefixes(static_cast<size_t>(n));
    {
        WideReal acc(0.0);
        for (int k = 0; k < n; ++k) {
            acc += x[static_cast<size_t>(k)];
            prefixes[static_cast<size_t>(k)] = acc;
        }
    }

    auto want = [&](const char* id) {
        if (cfg.bound_ids.empty()) return true;
        return std::find(cfg.bound_ids.begin(), cfg.bound_ids.end(), id) != cfg.bound_ids.end();
    };
    const bool sequential = cfg.tree == "sequential";

    std::vector<BoundTask> tasks;
    auto add = [&](BoundReport rep, Algorithm algo, double target) {
        tasks.push_back(BoundTask{rep.id, algo, target, rep.value, rep.valid});
    };
    if (want("prob_first_order"))
        add(prob_bound_first_order(internal, fmt, d, sr), Algorithm::General, 1 - d);
    if (want("prob_model1"))
        add(prob_bound_model1(internal, h, n, fmt, d, et, sr), Algorithm::General, 1 - (d + et));
    if (want("prob_model2"))
        add(prob_bound_model2(internal, h, n, fmt, d, et, sr), Algorithm::General, 1 - (d + et));
    if (sequential && want("shifted_seq_prob"))
        add(shifted_seq_prob_bound(xs, c, fmt, d, sr), Algorithm::Shifted, 1 - d);
    if (want("shifted_gen_prob_model1"))
        add(shifted_gen_prob_bound(xs, c, tree, fmt, d, et, 1, sr), Algorithm::Shifted,
            1 - (d + et));
    if (want("shifted_gen_prob_model2"))
        add(shifted_gen_prob_bound(xs, c, tree, fmt, d, et, 2, sr), Algorithm::Shifted,
            1 - (d + et));
    // The compensated algorithm has no tree; run its bounds once, on the
    // sequential config (or whenever asked for by name).
    if ((sequential || !cfg.bound_ids.empty()) && want("comp_prob_first"))
        add(comp_prob_bound(xs, prefixes, fmt, d, 1, sr), Algorithm::Compensated, 1 - d);
    if ((sequential || !cfg.bound_ids.empty()) && want("comp_prob_second"))
        add(comp_prob_bound(xs, prefixes, fmt, d, 2, sr), Algorithm::Compensated, 1 - d);

    // Group by algorithm so one run per trial feeds every bound of that
    // algorithm. Group ids are fixed so trial streams don't depend on which
    // bounds were selected.
    std::vector<std::unique_ptr<std::atomic<int>>> holds;
    for (size_t i = 0; i < tasks.size(); ++i)
        holds.push_back(std::make_unique<std::atomic<int>>(0));

    for (int group = 0; group < 3; ++group) {
        Algorithm algo = group == 0   ? Algorithm::General
                         : group == 1 ? Algorithm::Shifted
                                      : Algorithm::Compensated;
        std::vector<size_t> members;
        for (size_t i = 0; i < tasks.size(); ++i)
            if (tasks[i].algo == algo && tasks[i].valid) members.push_back(i);
        if (members.empty()) continue;
        parallel_for(cfg.jobs, cfg.trials, [&](long trial) {
            RoundingSpec spec;
            spec.mode = sr;
            spec.seed = cfg.seed;
            spec.stream = (static_cast<std::uint64_t>(group + 1) << 32) |
                          static_cast<std::uint64_t>(trial);
            RunTrace tr;
            switch (algo) {
                case Algorithm::General: tr = general_sum(tree, xs, fmt, spec, false); break;
                case Algorithm::Shifted: tr = shifted_sum(tree, xs, c, fmt, spec, false); break;
                case Algorithm::Compensated: tr = compensated_sum(xs, fmt, spec, false); break;
            }
            WideReal err = abs(tr.e_n);
            for (size_t i : members)
                if (err <= tasks[i].value) holds[i]->fetch_add(1);
        });
    }

    std::vector<CoverageRow> rows;
    for (size_t i = 0; i < tasks.size(); ++i) {
        CoverageRow row;
        row.bound_id = tasks[i].id;
        row.algorithm = algorithm_name(tasks[i].algo);
        row.n = n;
        row.tree = cfg.tree;
        row.fmt = fmt.name;
        row.trials = tasks[i].valid ? cfg.trials : 0;  // invalid bound: visibly not run
        row.holds = holds[i]->load();
        row.target = tasks[i].target;
        rows.push_back(std::move(row));
    }
    if (!cfg.out_csv.empty()) write_file(cfg.out_csv, coverage_to_csv(rows));
    return rows;
}

std::string coverage_to_csv(const std::vector<CoverageRow>& rows) {
    std::string out = "bound_id,algorithm,n,tree,fmt,trials,holds,hold_fraction,target\n";
    for (const CoverageRow& r : rows) {
        out += r.bound_id;
        out += ',';
        out += r.algorithm;
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += r.tree;
        out += ',';
        out += r.fmt;
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += std::to_string(r.holds);
        out += ',';
        out += fraction_str(r.holds, r.trials);
        out += ',';
        out += prob_str(r.target);
        out += '\n';
    }
    return out;
}

}  // namespace fpsum
