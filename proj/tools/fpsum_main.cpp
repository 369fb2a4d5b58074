// fpsum: command-line front end for the summation error laboratory.
// Subcommands: sum, verify, bounds, experiment, coverage.
// Exit codes: 0 = success, 1 = usage or data error, 2 = a verification or
// coverage criterion failed.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "fpsum/algorithms.hpp"
#include "fpsum/bounds.hpp"
#include "fpsum/experiments.hpp"
#include "fpsum/expressions.hpp"

namespace {

using namespace fpsum;

constexpr const char* kVersion = "0.1.0";
// Slack applied when judging a coverage fraction against the theorem's
// target, to absorb finite-trial noise at 10^4 trials.
constexpr double kCoverageSlack = 0.01;
// Residual tolerance for `verify`, as a multiple of sum |x_k|. Exact error
// expressions reproduce the measured error to oracle precision, far below
// this; anything near it means a formula is wrong.
constexpr long kVerifyTolLog2 = -40;

std::string dec(const WideReal& v) { return v.dec_string(16); }

RoundingMode mode_of(const std::string& name) {
    return name == "stochastic" ? RoundingMode::StochasticNearness : RoundingMode::NearestEven;
}

SumTree build_tree(const std::string& name, int n, std::uint64_t seed) {
    if (name == "pairwise") return SumTree::pairwise(n);
    if (name == "random") return SumTree::random(n, seed);
    return SumTree::sequential(n);
}

Algorithm algo_of(const std::string& name) {
    if (name == "shifted") return Algorithm::Shifted;
    if (name == "compensated") return Algorithm::Compensated;
    return Algorithm::General;
}

// One decimal or hex-float literal per line; blank lines and '#' comments
// skipped. Every value must be a machine number of fmt.
std::vector<WideReal> read_input(const std::string& path, const FpFormat& fmt) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file " + path);
    std::vector<WideReal> x;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        size_t a = line.find_first_not_of(" \t\r,");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r,");
        std::string tok = line.substr(a, b - a + 1);
        if (tok[0] == '#') continue;
        WideReal v = WideReal::parse(tok);
        if (!representable(v, fmt))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + tok +
                                     " is not representable in " + fmt.name);
        x.push_back(std::move(v));
    }
    if (x.empty()) throw std::runtime_error(path + ": no data lines");
    return x;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << content;
}

using Flags = std::vector<std::pair<std::string, std::string>>;

// Every run prints one header line with the resolved flag values, enough to
// reproduce the run exactly.
void print_header(const std::string& sub, const Flags& flags) {
    std::string line = std::string("fpsum ") + kVersion + " " + sub;
    for (const auto& [k, v] : flags) line += " --" + k + "=" + v;
    std::cout << line << "\n";
}

WideReal sum_abs(std::span<const WideReal> x) {
    WideReal s(0.0);
    for (const WideReal& v : x) s += abs(v);
    return s;
}

WideReal resolve_shift(const std::string& shift, std::span<const WideReal> x,
                       const FpFormat& fmt) {
    if (shift == "auto") return choose_shift(x, fmt);
    WideReal c = WideReal::parse(shift);
    if (!representable(c, fmt))
        throw std::runtime_error("--shift " + shift + " is not representable in " + fmt.name);
    return c;
}

// ---------------------------------------------------------------- sum -----

struct SumArgs {
    std::string fmt = "binary64", mode = "nearest", algo = "general", tree = "sequential";
    std::string shift = "auto", input, out;
    std::uint64_t seed = 1;
};

int cmd_sum(const SumArgs& a) {
    FpFormat f = parse_format(a.fmt);
    std::vector<WideReal> x = read_input(a.input, f);
    const int n = static_cast<int>(x.size());
    print_header("sum", {{"fmt", a.fmt},
                         {"mode", a.mode},
                         {"algo", a.algo},
                         {"tree", a.tree},
                         {"shift", a.shift},
                         {"seed", std::to_string(a.seed)},
                         {"input", a.input}});
    RoundingSpec spec;
    spec.mode = mode_of(a.mode);
    spec.seed = a.seed;
    RunTrace tr;
    switch (algo_of(a.algo)) {
        case Algorithm::General:
            tr = general_sum(build_tree(a.tree, n, a.seed), x, f, spec);
            break;
        case Algorithm::Shifted: {
            WideReal c = resolve_shift(a.shift, x, f);
            std::cout << "c = " << c.hex_string() << " (" << dec(c) << ")\n";
            tr = shifted_sum(build_tree(a.tree, n, a.seed), x, c, f, spec);
            break;
        }
        case Algorithm::Compensated:
            tr = compensated_sum(x, f, spec);
            break;
    }
    std::cout << "n = " << n << ", algorithm = " << a.algo << ", fmt = " << f.name << "\n";
    std::cout << "s_hat = " << tr.s_hat_n.hex_string() << " (" << dec(tr.s_hat_n) << ")\n";
    std::cout << "s     = " << dec(tr.s_n) << "\n";
    std::cout << "e     = " << dec(tr.e_n) << "\n";
    if (tr.s_n.is_zero())
        std::cout << "rel   = undefined (exact sum is zero)\n";
    else
        std::cout << "rel   = " << dec(abs(tr.e_n) / abs(tr.s_n)) << "\n";
    if (!a.out.empty()) {
        write_text(a.out, tr.to_json() + "\n");
        std::cout << "wrote " << a.out << "\n";
    }
    return 0;
}

// ------------------------------------------------------------- verify -----

struct VerifyArgs {
    int n = 64, trials = 1000, jobs = 0;
    std::string fmt = "binary16", tree = "sequential", mode = "nearest", out;
    std::uint64_t seed = 1;
};

struct VerifyRow {
    const char* expr;
    std::uint64_t seed;
    WideReal residual, tol;
    bool pass;
};

int cmd_verify(const VerifyArgs& a) {
    FpFormat f = parse_format(a.fmt);
    print_header("verify", {{"n", std::to_string(a.n)},
                            {"trials", std::to_string(a.trials)},
                            {"fmt", a.fmt},
                            {"tree", a.tree},
                            {"mode", a.mode},
                            {"seed", std::to_string(a.seed)},
                            {"jobs", std::to_string(a.jobs)}});
    const RoundingMode mode = mode_of(a.mode);
    std::vector<std::vector<VerifyRow>> slots(static_cast<size_t>(a.trials));

    parallel_for(a.jobs, a.trials, [&](long t) {
        const std::uint64_t seed_t = a.seed + static_cast<std::uint64_t>(t);
        std::vector<WideReal> x = gen_normal(a.n, seed_t, f);
        const WideReal tol = WideReal::pow2(kVerifyTolLog2) * sum_abs(x);
        std::vector<VerifyRow>& rows = slots[static_cast<size_t>(t)];
        auto push = [&](const char* id, const WideReal& residual) {
            rows.push_back(VerifyRow{id, seed_t, residual, tol, abs(residual) <= tol});
        };
        auto spec = [&](std::uint64_t stream) {
            RoundingSpec s;
            s.mode = mode;
            s.seed = seed_t;
            s.stream = stream;
            return s;
        };
        SumTree tree = build_tree(a.tree, a.n, seed_t);
        SumTree seq = SumTree::sequential(a.n);

        RunTrace tg = general_sum(tree, x, f, spec(0));
        push("general_explicit", general_explicit(tg, tree).residual);
        push("general_recursive", general_recursive(tg, tree).result.residual);

        RunTrace ts = shifted_sum(seq, x, choose_shift(x, f), f, spec(1));
        push("shifted_seq_exact", shifted_sequential_exact(ts).residual);

        RunTrace tc = compensated_sum(x, f, spec(2));
        std::vector<CompState> states = comp_matrix_recursion(tc);
        push("comp_matrix_recursion", states.back().e - tc.e_n);
        push("comp_explicit", comp_explicit(tc).residual);
        push("comp_expr_first", comp_expr_first(tc).residual);
        if (a.n >= 3) push("comp_expr_second", comp_expr_second(tc).result.residual);
    });

    // Summaries in fixed expression order; CSV in (trial, expression) order.
    std::vector<std::pair<std::string, WideReal>> worst;
    auto note = [&](const VerifyRow& r) {
        for (auto& [id, w] : worst)
            if (id == r.expr) {
                if (abs(r.residual) > w) w = abs(r.residual);
                return;
            }
        worst.emplace_back(r.expr, abs(r.residual));
    };
    std::string csv = "expression_id,n,fmt,seed,residual,tolerance,pass\n";
    bool all_pass = true;
    for (const auto& rows : slots)
        for (const VerifyRow& r : rows) {
            note(r);
            all_pass = all_pass && r.pass;
            csv += std::string(r.expr) + "," + std::to_string(a.n) + "," + f.name + "," +
                   std::to_string(r.seed) + "," + dec(r.residual) + "," + dec(r.tol) + "," +
                   (r.pass ? "1" : "0") + "\n";
        }
    for (const auto& [id, w] : worst)
        std::printf("%-24s max |residual| = %s\n", id.c_str(), dec(w).c_str());
    if (!a.out.empty()) {
        write_text(a.out, csv);
        std::cout << "wrote " << a.out << "\n";
    }
    std::cout << "verify: " << (all_pass ? "PASS" : "FAIL") << " (" << a.trials << " trials, n=" << a.n
              << ", tolerance 2^" << kVerifyTolLog2 << " * sum|x|)\n";
    return all_pass ? 0 : 2;
}

// ------------------------------------------------------------- bounds -----

struct BoundsArgs {
    std::string fmt = "binary64", mode = "nearest", algo = "general", tree = "sequential";
    std::string shift = "auto", input, out;
    double delta = 0.01, eta = 0.01;
    std::uint64_t seed = 1;
};

int cmd_bounds(const BoundsArgs& a) {
    FpFormat f = parse_format(a.fmt);
    std::vector<WideReal> x = read_input(a.input, f);
    const int n = static_cast<int>(x.size());
    print_header("bounds", {{"fmt", a.fmt},
                            {"mode", a.mode},
                            {"algo", a.algo},
                            {"tree", a.tree},
                            {"shift", a.shift},
                            {"delta", std::to_string(a.delta)},
                            {"eta", std::to_string(a.eta)},
                            {"seed", std::to_string(a.seed)},
                            {"input", a.input}});
    const RoundingMode mode = mode_of(a.mode);
    RoundingSpec spec;
    spec.mode = mode;
    spec.seed = a.seed;

    std::vector<BoundReport> reports;
    RunTrace tr;
    switch (algo_of(a.algo)) {
        case Algorithm::General: {
            SumTree tree = build_tree(a.tree, n, a.seed);
            tr = general_sum(tree, x, f, spec);
            std::vector<WideReal> partials = tree.exact_partial_sums(x);
            std::span<const WideReal> internal(partials.data() + 2,
                                               n >= 2 ? static_cast<size_t>(n - 1) : 0);
            reports.push_back(det_bound_general(x, tree, f, mode, &tr));
            reports.push_back(prob_bound_first_order(internal, f, a.delta, mode));
            reports.push_back(prob_bound_model1(internal, tree.height(), n, f, a.delta, a.eta, mode));
            reports.push_back(prob_bound_model2(internal, tree.height(), n, f, a.delta, a.eta, mode));
            break;
        }
        case Algorithm::Shifted: {
            SumTree tree = build_tree(a.tree, n, a.seed);
            WideReal c = resolve_shift(a.shift, x, f);
            std::cout << "c = " << c.hex_string() << " (" << dec(c) << ")\n";
            tr = shifted_sum(tree, x, c, f, spec);
            if (a.tree == "sequential") {
                reports.push_back(shifted_seq_det_bound(x, c, f, mode));
                reports.push_back(shifted_seq_prob_bound(x, c, f, a.delta, mode));
            }
            reports.push_back(shifted_gen_prob_bound(x, c, tree, f, a.delta, a.eta, 1, mode));
            reports.push_back(shifted_gen_prob_bound(x, c, tree, f, a.delta, a.eta, 2, mode));
            break;
        }
        case Algorithm::Compensated: {
            tr = compensated_sum(x, f, spec);
            std::vector<WideReal> prefixes;
            prefixes.reserve(x.size());
            WideReal acc(0.0);
            for (const WideReal& v : x) {
                acc += v;
                prefixes.push_back(acc);
            }
            reports.push_back(comp_first_order_bound(x, f, mode));
            reports.push_back(comp_second_order_det_bound(x, f, mode));
            reports.push_back(comp_prob_bound(x, prefixes, f, a.delta, 1, mode));
            reports.push_back(comp_prob_bound(x, prefixes, f, a.delta, 2, mode));
            break;
        }
    }

    std::cout << "n = " << n << ", |e| = " << dec(abs(tr.e_n)) << "\n";
    std::printf("%-28s %-26s %s\n", "bound_id", "value", "valid");
    std::string csv = "bound_id,value,valid\n";
    for (const BoundReport& r : reports) {
        std::printf("%-28s %-26s %s\n", r.id.c_str(), r.valid ? dec(r.value).c_str() : "-",
                    r.valid ? "yes" : "no");
        csv += r.id + "," + (r.valid ? dec(r.value) : std::string()) + "," +
               (r.valid ? "1" : "0") + "\n";
    }
    if (!a.out.empty()) {
        write_text(a.out, csv);
        std::cout << "wrote " << a.out << "\n";
    }
    return 0;
}

// --------------------------------------------------------- experiment -----

struct ExperimentArgs {
    std::string figure = "fig1", fmt, generator, grid, out, svg;
    double m = 1e4, delta = 0.01;
    std::uint64_t seed = 1;
    int jobs = 0;
    bool fmt_set = false, generator_set = false, m_set = false, grid_set = false;
};

void parse_grid(const std::string& s, ExperimentConfig& cfg) {
    long a = 0, b = 0, c = 0;
    if (std::sscanf(s.c_str(), "%ld:%ld:%ld", &a, &b, &c) != 3)
        throw std::runtime_error("--grid expects start:step:stop, got " + s);
    cfg.grid_start = a;
    cfg.grid_step = b;
    cfg.grid_stop = c;
}

int cmd_experiment(const ExperimentArgs& a) {
    ExperimentConfig cfg;
    cfg.figure = a.figure;
    // Desk-scale figure defaults; each can be overridden by its flag.
    if (a.figure == "fig2") cfg.generator = "normal";
    if (a.figure == "fig3") {
        cfg.fmt = binary16();
        cfg.m = 0.0;
        cfg.grid_stop = 60000;
    }
    if (a.fmt_set) cfg.fmt = parse_format(a.fmt);
    if (a.generator_set) cfg.generator = a.generator;
    if (a.m_set) cfg.m = a.m;
    if (a.grid_set) parse_grid(a.grid, cfg);
    cfg.seed = a.seed;
    cfg.delta_fail = a.delta;
    cfg.jobs = a.jobs;
    cfg.out_csv = a.out.empty() ? a.figure + ".csv" : a.out;
    if (!a.svg.empty()) {
        cfg.out_svg = a.svg;
    } else {
        std::string stem = cfg.out_csv;
        size_t dot = stem.rfind('.');
        if (dot != std::string::npos) stem.resize(dot);
        cfg.out_svg = stem + ".svg";
    }
    print_header("experiment",
                 {{"figure", cfg.figure},
                  {"fmt", cfg.fmt.name},
                  {"generator", cfg.generator},
                  {"m", std::to_string(cfg.m)},
                  {"grid", std::to_string(cfg.grid_start) + ":" + std::to_string(cfg.grid_step) +
                               ":" + std::to_string(cfg.grid_stop)},
                  {"delta", std::to_string(cfg.delta_fail)},
                  {"seed", std::to_string(cfg.seed)},
                  {"jobs", std::to_string(cfg.jobs)},
                  {"out", cfg.out_csv},
                  {"svg", cfg.out_svg}});

    std::vector<ResultRow> rows = run_figure(cfg);
    std::vector<std::pair<std::string, WideReal>> worst;
    for (const ResultRow& r : rows) {
        if (!r.rel_error_defined) continue;
        bool found = false;
        for (auto& [id, w] : worst)
            if (id == r.algorithm) {
                if (r.rel_error > w) w = r.rel_error;
                found = true;
            }
        if (!found) worst.emplace_back(r.algorithm, r.rel_error);
    }
    for (const auto& [id, w] : worst)
        std::printf("%-14s max rel_error = %s\n", id.c_str(), dec(w).c_str());
    std::cout << "wrote " << cfg.out_csv << " (" << rows.size() << " rows) and " << cfg.out_svg
              << "\n";
    return 0;
}

// ----------------------------------------------------------- coverage -----

struct CoverageArgs {
    int n = 256, trials = 10000, jobs = 0;
    std::string fmt = "binary16", tree = "sequential", generator = "normal", out;
    double m = 1e4, delta = 0.01, eta = 0.01;
    std::uint64_t seed = 1;
};

int cmd_coverage(const CoverageArgs& a) {
    ExperimentConfig cfg;
    cfg.figure = "coverage";
    cfg.fmt = parse_format(a.fmt);
    cfg.generator = a.generator;
    cfg.m = a.m;
    cfg.n = a.n;
    cfg.trials = a.trials;
    cfg.tree = a.tree;
    cfg.delta_fail = a.delta;
    cfg.eta_fail = a.eta;
    cfg.seed = a.seed;
    cfg.jobs = a.jobs;
    cfg.out_csv = a.out;
    print_header("coverage", {{"n", std::to_string(a.n)},
                              {"trials", std::to_string(a.trials)},
                              {"fmt", a.fmt},
                              {"tree", a.tree},
                              {"generator", a.generator},
                              {"m", std::to_string(a.m)},
                              {"delta", std::to_string(a.delta)},
                              {"eta", std::to_string(a.eta)},
                              {"seed", std::to_string(a.seed)},
                              {"jobs", std::to_string(a.jobs)}});

    std::vector<CoverageRow> rows = run_coverage(cfg);
    bool all_pass = true;
    std::printf("%-26s %-12s %8s %8s %10s %8s  %s\n", "bound_id", "algorithm", "trials", "holds",
                "fraction", "target", "status");
    for (const CoverageRow& r : rows) {
        if (r.trials == 0) {
            std::printf("%-26s %-12s %8d %8d %10s %8.4f  SKIP (bound precondition failed)\n",
                        r.bound_id.c_str(), r.algorithm.c_str(), r.trials, r.holds, "-", r.target);
            continue;
        }
        double frac = static_cast<double>(r.holds) / r.trials;
        bool pass = frac >= r.target - kCoverageSlack;
        all_pass = all_pass && pass;
        std::printf("%-26s %-12s %8d %8d %10.4f %8.4f  %s\n", r.bound_id.c_str(),
                    r.algorithm.c_str(), r.trials, r.holds, frac, r.target,
                    pass ? "PASS" : "FAIL");
    }
    if (!a.out.empty()) std::cout << "wrote " << a.out << "\n";
    std::cout << "coverage: " << (all_pass ? "PASS" : "FAIL") << "\n";
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"floating-point summation rounding-error laboratory"};
    app.set_version_flag("--version", std::string("fpsum ") + kVersion);
    app.require_subcommand(1);

    const std::vector<std::string> kModes = {"nearest", "stochastic"};
    const std::vector<std::string> kAlgos = {"general", "shifted", "compensated"};
    const std::vector<std::string> kTrees = {"sequential", "pairwise", "random"};
    const char* kFmtHelp = "binary16 | binary32 | binary64 | custom:p=..,emin=..,emax=..";

    SumArgs sum_args;
    CLI::App* sc_sum = app.add_subcommand("sum", "run one summation and report its error");
    sc_sum->add_option("--fmt", sum_args.fmt, kFmtHelp);
    sc_sum->add_option("--mode", sum_args.mode)->check(CLI::IsMember(kModes));
    sc_sum->add_option("--algo", sum_args.algo)->check(CLI::IsMember(kAlgos));
    sc_sum->add_option("--tree", sum_args.tree)->check(CLI::IsMember(kTrees));
    sc_sum->add_option("--shift", sum_args.shift, "auto or a literal (shifted algorithm)");
    sc_sum->add_option("--seed", sum_args.seed);
    sc_sum->add_option("--input", sum_args.input, "one literal per line")->required();
    sc_sum->add_option("--out", sum_args.out, "write the run trace as JSON");

    VerifyArgs verify_args;
    CLI::App* sc_verify =
        app.add_subcommand("verify", "check the error expressions against measured errors");
    sc_verify->add_option("--n", verify_args.n)->check(CLI::Range(2, 1 << 20));
    sc_verify->add_option("--trials", verify_args.trials)->check(CLI::PositiveNumber);
    sc_verify->add_option("--fmt", verify_args.fmt, kFmtHelp);
    sc_verify->add_option("--tree", verify_args.tree)->check(CLI::IsMember(kTrees));
    sc_verify->add_option("--mode", verify_args.mode)->check(CLI::IsMember(kModes));
    sc_verify->add_option("--seed", verify_args.seed);
    sc_verify->add_option("--jobs", verify_args.jobs);
    sc_verify->add_option("--out", verify_args.out, "write the residual table as CSV");

    BoundsArgs bounds_args;
    CLI::App* sc_bounds = app.add_subcommand("bounds", "evaluate error bounds for an input");
    sc_bounds->add_option("--fmt", bounds_args.fmt, kFmtHelp);
    sc_bounds->add_option("--mode", bounds_args.mode)->check(CLI::IsMember(kModes));
    sc_bounds->add_option("--algo", bounds_args.algo)->check(CLI::IsMember(kAlgos));
    sc_bounds->add_option("--tree", bounds_args.tree)->check(CLI::IsMember(kTrees));
    sc_bounds->add_option("--shift", bounds_args.shift);
    sc_bounds->add_option("--delta", bounds_args.delta)->check(CLI::Range(0.0, 1.0));
    sc_bounds->add_option("--eta", bounds_args.eta)->check(CLI::Range(0.0, 1.0));
    sc_bounds->add_option("--seed", bounds_args.seed);
    sc_bounds->add_option("--input", bounds_args.input)->required();
    sc_bounds->add_option("--out", bounds_args.out, "write the bound table as CSV");

    ExperimentArgs exp_args;
    CLI::App* sc_exp = app.add_subcommand("experiment", "error-vs-n sweep with CSV/SVG output");
    sc_exp->add_option("--figure", exp_args.figure)->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
    CLI::Option* o_fmt = sc_exp->add_option("--fmt", exp_args.fmt, kFmtHelp);
    CLI::Option* o_gen = sc_exp->add_option("--generator", exp_args.generator)
                             ->check(CLI::IsMember({"uniform_shifted", "normal"}));
    CLI::Option* o_m = sc_exp->add_option("--m", exp_args.m, "uniform_shifted offset");
    CLI::Option* o_grid = sc_exp->add_option("--grid", exp_args.grid, "start:step:stop");
    sc_exp->add_option("--delta", exp_args.delta)->check(CLI::Range(0.0, 1.0));
    sc_exp->add_option("--seed", exp_args.seed);
    sc_exp->add_option("--jobs", exp_args.jobs);
    sc_exp->add_option("--out", exp_args.out, "CSV path (default <figure>.csv)");
    sc_exp->add_option("--svg", exp_args.svg, "SVG path (default CSV path with .svg)");

    CoverageArgs cov_args;
    CLI::App* sc_cov =
        app.add_subcommand("coverage", "stochastic-rounding hold fractions for the bounds");
    sc_cov->add_option("--n", cov_args.n)->check(CLI::Range(1, 1 << 20));
    sc_cov->add_option("--trials", cov_args.trials)->check(CLI::PositiveNumber);
    sc_cov->add_option("--fmt", cov_args.fmt, kFmtHelp);
    sc_cov->add_option("--tree", cov_args.tree)->check(CLI::IsMember(kTrees));
    sc_cov->add_option("--generator", cov_args.generator)
        ->check(CLI::IsMember({"uniform_shifted", "normal"}));
    sc_cov->add_option("--m", cov_args.m, "uniform_shifted offset");
    sc_cov->add_option("--delta", cov_args.delta)->check(CLI::Range(0.0, 1.0));
    sc_cov->add_option("--eta", cov_args.eta)->check(CLI::Range(0.0, 1.0));
    sc_cov->add_option("--seed", cov_args.seed);
    sc_cov->add_option("--jobs", cov_args.jobs);
    sc_cov->add_option("--out", cov_args.out, "write the coverage table as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    exp_args.fmt_set = o_fmt->count() > 0;
    exp_args.generator_set = o_gen->count() > 0;
    exp_args.m_set = o_m->count() > 0;
    exp_args.grid_set = o_grid->count() > 0;

    try {
        if (sc_sum->parsed()) return cmd_sum(sum_args);
        if (sc_verify->parsed()) return cmd_verify(verify_args);
        if (sc_bounds->parsed()) return cmd_bounds(bounds_args);
        if (sc_exp->parsed()) return cmd_experiment(exp_args);
        if (sc_cov->parsed()) return cmd_coverage(cov_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
