#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpsum/rounding.hpp"
#include "fpsum/sumtree.hpp"

namespace fpsum {

enum class Algorithm { General, Shifted, Compensated };

std::string algorithm_name(Algorithm a);

// Everything one run produces. Series are stored at their customary 1-based
// indices (slot 0, and any index the algorithm never assigns, holds zero), so
// trace.delta[k] is exactly the delta_k the error expressions talk about.
// Conventions delta_1 = 0 (shifted) and eta_2 = 0 (compensated) are stored as
// real entries rather than left missing.
//
// general:      s_hat/s_exact/delta indexed by internal node k = 2..n.
// shifted:      y_hat/y_exact/eps indexed 1..n, plus slot n+1 for nc;
//               t_hat/t_exact indexed by inner node k = 2..n; delta indexed
//               1..n+1 where 2..n are the inner adds and n+1 the final
//               uncentering add; t_exact[k] sums the exact y over node k's
//               leaves (sequentially that is s_k - k c).
// compensated:  s_hat/s_exact prefixes 1..n; sigma/eta/delta/beta/c_hat/y_hat
//               indexed 2..n.
struct RunTrace {
    Algorithm algo = Algorithm::General;
    FpFormat fmt;
    RoundingSpec rounding;
    int n = 0;

    std::vector<WideReal> x;  // [1..n]
    std::vector<WideReal> s_hat, s_exact, delta;
    std::vector<WideReal> eps, y_hat, y_exact, t_hat, t_exact;
    std::vector<WideReal> sigma, eta, beta, c_hat;
    WideReal shift_c;
    std::optional<SumTree> tree;  // the ordering used (general/shifted only)

    WideReal s_hat_n;  // computed sum
    WideReal s_n;      // exact sum
    WideReal e_n;      // s_hat_n - s_n, oracle precision

    std::string to_json() const;
};

// Exact oracle sum, the reference every error is measured against.
WideReal exact_sum(std::span<const WideReal> x);

// Tree summation: node k computes fl(left + right), logging delta_k.
// full_trace=false skips roundoff extraction and per-node storage (the
// error-only mode coverage experiments run in); the final error is exact
// either way. Inputs must be representable in fmt.
RunTrace general_sum(const SumTree& tree, std::span<const WideReal> x, const FpFormat& fmt,
                     const RoundingSpec& spec = {}, bool full_trace = true);

// Shift-and-sum: y_k = fl(x_k - c) (roundoff eps_k), the tree sums the y,
// nc = fl(n * c) (logged as eps_{n+1}), and the final add restores the sum
// (delta_{n+1}). c itself must be representable in fmt.
RunTrace shifted_sum(const SumTree& tree, std::span<const WideReal> x, const WideReal& c,
                     const FpFormat& fmt, const RoundingSpec& spec = {}, bool full_trace = true);

// Kahan's compensated summation, sequential:
//   y_k = fl(x_k - c_{k-1})            roundoff eta_k (eta_2 = 0 since c_1 = 0)
//   s_k = fl(s_{k-1} + y_k)            roundoff sigma_k
//   c_k = fl(fl(s_k - s_{k-1}) - y_k)  roundoffs delta_k, then beta_k
RunTrace compensated_sum(std::span<const WideReal> x, const FpFormat& fmt,
                         const RoundingSpec& spec = {}, bool full_trace = true);

// Test hook: re-evaluates the compensated recurrences in oracle arithmetic
// from externally supplied roundoff series (1-based, entries 2..n read).
// With use_feedback=false the correction never reenters the y-update, which
// collapses the model to plain sequential summation over the sigma_k.
// Returns the model's e_n.
WideReal replay_compensated(std::span<const WideReal> x, const std::vector<WideReal>& sigma,
                            const std::vector<WideReal>& eta, const std::vector<WideReal>& delta,
                            const std::vector<WideReal>& beta, bool use_feedback = true);

}  // namespace fpsum
