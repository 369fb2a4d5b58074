#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include "fpsum/algorithms.hpp"
#include "fpsum/rounding.hpp"
#include "fpsum/sumtree.hpp"

namespace fpsum {

// A relative bound was requested for a zero exact sum.
class ZeroSumError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// One evaluated bound. Everything here is a priori: computed from inputs,
// exact partial sums, tree shape, u, and failure probabilities only, never
// from realized roundoffs (the lone exception is the Higham comparator in
// det_bound_general, which exists for comparison, not as a bound we test).
// When a precondition fails, valid=false and value is 0.
struct BoundReport {
    std::string id;
    WideReal value;
    bool valid = true;
    std::map<std::string, WideReal> constituents;
    std::map<std::string, bool> flags;
};

// sqrt(2 ln(2/delta)), the confidence multiplier every probabilistic bound
// carries (about 3.26 at delta = 0.01).
WideReal confidence_factor(double delta_fail);
// lambda = sqrt(2 ln(2n/eta)): union-bound multiplier over n events.
WideReal lambda_general(int n, double eta_fail);
// lambda = sqrt(2 ln(2(2n+1)/eta)): same, for the 2n+1 shifted-summation nodes.
WideReal lambda_shifted(int n, double eta_fail);

// Azuma-Hoeffding deviation radius: sqrt(sum c_k^2) * sqrt(2 ln(2/delta)).
WideReal azuma_radius(std::span<const WideReal> c, double delta_fail);

// Deterministic bound u(1+u)^h sum_{k=2..n}|s_k| over the tree's exact
// partial sums. Constituents carry the aggregate form u(1+u)^h h sum|x|
// (valid only when hu < 1; see flag "hu_lt_1") and, when a trace is given,
// the a-posteriori comparator u sum|s_hat_k|. verbatim_aggregate additionally
// reports the printed aggregate form h^2u^2/(1-hu) sum|x|, which is not a
// consequence of the partial-sum bound and exists for diagnostics only.
BoundReport det_bound_general(std::span<const WideReal> x, const SumTree& tree,
                              const FpFormat& fmt,
                              RoundingMode mode = RoundingMode::NearestEven,
                              const RunTrace* trace = nullptr, bool verbatim_aggregate = false);

// First-order probabilistic bound u sqrt(sum s_k^2) sqrt(2 ln(2/delta)) over
// the given partial sums (pass s_k for k = 2..n).
BoundReport prob_bound_first_order(std::span<const WideReal> partial_sums, const FpFormat& fmt,
                                   double delta_fail,
                                   RoundingMode mode = RoundingMode::NearestEven);

// Model-1 (independent roundoffs) bound:
//   u exp(lambda sqrt(h) u) sqrt(sum s_k^2) sqrt(2 ln(2/delta)),
// failure budget delta + eta.
BoundReport prob_bound_model1(std::span<const WideReal> partial_sums, int h, int n,
                              const FpFormat& fmt, double delta_fail, double eta_fail,
                              RoundingMode mode = RoundingMode::NearestEven);

// Model-2 (mean-independent roundoffs) bound:
//   u/(1 - lambda sqrt(h) u) sqrt(sum s_k^2) sqrt(2 ln(2/delta)),
// requires lambda sqrt(h) u < 1 (else valid=false).
BoundReport prob_bound_model2(std::span<const WideReal> partial_sums, int h, int n,
                              const FpFormat& fmt, double delta_fail, double eta_fail,
                              RoundingMode mode = RoundingMode::NearestEven);

// Deterministic bound for shifted sequential summation:
//   u(1+u)^n (sum_{k=2..n}|s_k - kc| + sum_{k=1..n}|x_k - c| + |s_n| + |nc|).
BoundReport shifted_seq_det_bound(std::span<const WideReal> x, const WideReal& c,
                                  const FpFormat& fmt,
                                  RoundingMode mode = RoundingMode::NearestEven);

// Probabilistic bound for shifted sequential summation:
//   max_{1<=k<=n+1}(|s_k - kc| + |x_k - c|) sqrt(u gamma_{2(n+2)} / 2) sqrt(2 ln(2/delta)),
// where gamma_m = (1+u)^m - 1 and the k = n+1 term is |s_n| + |nc|.
// Constituent "simplified" swaps the middle factor for sqrt(n+2) u.
BoundReport shifted_seq_prob_bound(std::span<const WideReal> x, const WideReal& c,
                                   const FpFormat& fmt, double delta_fail,
                                   RoundingMode mode = RoundingMode::NearestEven);

// Probabilistic bound for shifted summation over an arbitrary inner tree of
// height h, with lambda = sqrt(2 ln(2(2n+1)/eta)) and radicand
// s_n^2 + sum_{k=2..n} t_k^2 + sum_{k=1..n} y_k^2:
//   model 1: u exp(lambda sqrt(h+2) u) sqrt(radicand) sqrt(2 ln(2/delta))
//   model 2: u/(1 - lambda sqrt(h+2) u) sqrt(radicand) sqrt(2 ln(2/delta)).
// Model 2 requires lambda sqrt(h+2) u < 1.
BoundReport shifted_gen_prob_bound(std::span<const WideReal> x, const WideReal& c,
                                   const SumTree& tree, const FpFormat& fmt, double delta_fail,
                                   double eta_fail, int model,
                                   RoundingMode mode = RoundingMode::NearestEven);

// Compensated summation, first order: 3u sum|x|.
BoundReport comp_first_order_bound(std::span<const WideReal> x, const FpFormat& fmt,
                                   RoundingMode mode = RoundingMode::NearestEven);

// Compensated summation, second order: (3u + 4nu^2) sum|x|.
BoundReport comp_second_order_det_bound(std::span<const WideReal> x, const FpFormat& fmt,
                                        RoundingMode mode = RoundingMode::NearestEven);

// Compensated summation probabilistic bounds (s_partials = prefix sums 1..n):
//   order 2: u (2(1+3u)||x||_2 + sqrt(s_n^2 + 16u^2 sum_{k=1..n-1} s_k^2)) sqrt(2 ln(2/delta))
//   order 1: u (2||x||_2 + |s_n|) sqrt(2 ln(2/delta)).
// Order 2 also reports the looser norm-only variant
//   u (2(1+3u)||x||_2 + sqrt(1+16(n-2)u^2)||x||_1) sqrt(2 ln(2/delta))
// as constituent "l1_relaxation" (n >= 2).
BoundReport comp_prob_bound(std::span<const WideReal> x, std::span<const WideReal> s_partials,
                            const FpFormat& fmt, double delta_fail, int order,
                            RoundingMode mode = RoundingMode::NearestEven);

// Relative bounds the experiment figures plot.
//   shifted:     u sqrt(n+2) max_{1<=k<=n+1}((|s_k-kc|+|x_k-c|)/|s_n|) sqrt(2 ln(2/delta))
//   compensated: u (2||x||_2 + |s_n|)/|s_n| sqrt(2 ln(2/delta))
// Throw ZeroSumError when s_n = 0.
WideReal relative_bound_shifted(std::span<const WideReal> x, const WideReal& c,
                                const FpFormat& fmt, double delta_fail,
                                RoundingMode mode = RoundingMode::NearestEven);
WideReal relative_bound_comp(std::span<const WideReal> x, const FpFormat& fmt, double delta_fail,
                             RoundingMode mode = RoundingMode::NearestEven);

// Simultaneous per-node radius for the inherited errors f_k:
//   lambda u / (1 - lambda sqrt(h) u) * sqrt(sum_sq_descendants),
// lambda = sqrt(2 ln(2n/eta)); requires lambda sqrt(h) u < 1.
// sum_sq_descendants is sum of s_j^2 over internal nodes j strictly below k.
BoundReport fk_prob_radius(const WideReal& sum_sq_descendants, int h, int n, const FpFormat& fmt,
                           double eta_fail, RoundingMode mode = RoundingMode::NearestEven);

}  // namespace fpsum
