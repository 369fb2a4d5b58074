#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fpsum/algorithms.hpp"
#include "fpsum/bounds.hpp"

namespace fpsum {

// One experiment description. Figure runs use NearestEven; coverage runs use
// StochasticNearness (per-trial streams derived from seed). Identical config
// in, byte-identical CSV out.
struct ExperimentConfig {
    std::string figure = "fig1";  // fig1 | fig2 | fig3 | coverage
    FpFormat fmt = binary64();
    std::vector<Algorithm> algorithms;  // empty = figure default
    std::string generator = "uniform_shifted";
    double m = 1e4;  // uniform_shifted offset
    long grid_start = 10, grid_step = 1000, grid_stop = 100000;
    std::uint64_t seed = 1;
    double delta_fail = 0.01;
    int jobs = 1;  // <= 0 means hardware concurrency
    std::string out_csv;  // empty = don't write
    std::string out_svg;  // empty = don't write

    // coverage runs
    int n = 256;
    int trials = 10000;
    double eta_fail = 0.01;
    std::string tree = "sequential";  // sequential | pairwise | random
    std::vector<std::string> bound_ids;  // empty = all applicable
};

// One CSV line of a figure run. Cells that don't apply stay undefined and
// print empty (or the "nan" sentinel for a relative error with zero exact
// sum; such rows are skipped by the chart).
struct ResultRow {
    long n = 0;
    std::string algorithm;
    WideReal rel_error;
    bool rel_error_defined = false;
    std::string bound_id;
    WideReal bound_value;
    bool bound_defined = false;
    std::string fmt;
    std::uint64_t seed = 0;
    WideReal c;
    bool c_defined = false;
};

struct CoverageRow {
    std::string bound_id;
    std::string algorithm;
    long n = 0;
    std::string tree;
    std::string fmt;
    int trials = 0;
    int holds = 0;
    double target = 0.0;  // the theorem's own guarantee, 1-delta or 1-(delta+eta)
};

// x_k = m + uniform[0,1], rounded into fmt. Fixed seed, fixed sequence.
std::vector<WideReal> gen_uniform_shifted(double m, long n, std::uint64_t seed,
                                          const FpFormat& fmt);
// x_k = normal(0,1), rounded into fmt.
std::vector<WideReal> gen_normal(long n, std::uint64_t seed, const FpFormat& fmt);

// c = (min + max)/2, computed exactly, rounded into fmt.
WideReal choose_shift(std::span<const WideReal> x, const FpFormat& fmt);

// Runs one figure: generates data once at the grid maximum, then for each n
// in the grid sums its leading n elements with every configured algorithm
// (sequential ordering, NearestEven), recording relative errors and the
// figure's bound column (fig1: relative shifted bound on shifted rows;
// fig3: relative compensated bound on compensated rows; fig2: none).
// Writes CSV/SVG files when the config names them.
std::vector<ResultRow> run_figure(const ExperimentConfig& cfg);

// Runs stochastic-rounding coverage for the probabilistic bounds: data and
// bound values are fixed per config, each trial reruns the algorithm with a
// fresh rounding stream and counts whether |e| <= bound.
std::vector<CoverageRow> run_coverage(const ExperimentConfig& cfg);

std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::string coverage_to_csv(const std::vector<CoverageRow>& rows);

// Runs fn(0..count-1) on up to `jobs` threads (jobs <= 0: hardware
// concurrency). Results must be written to disjoint slots; the partition is
// deterministic but the interleaving is not.
void parallel_for(int jobs, long count, const std::function<void(long)>& fn);

}  // namespace fpsum
