#pragma once

#include <string>
#include <vector>

#include "fpsum/algorithms.hpp"

namespace fpsum {

// One reconstructed error value. The residual is what the oracle-equivalence
// tests gate on: reconstruction minus the trace's measured e_n, kept exactly
// in oracle precision.
struct ExpressionResult {
    std::string id;
    WideReal value;
    WideReal residual;
};

// Tolerance the equality tests use: 2^(-P/2) * sum|x_i| at oracle precision P.
// The expressions are exact identities; only oracle rounding separates the
// two sides, and it sits far below this.
WideReal oracle_slack(const RunTrace& trace);

// e_n = sum_{k=2..n} s_k delta_k prod_{j ancestor of k} (1 + delta_j).
// Empty products are 1 (the root contributes s_n delta_n alone).
ExpressionResult general_explicit(const RunTrace& trace, const SumTree& tree);

// Bottom-up form: f_k = e_left + e_right, e_k = f_k + (s_k + f_k) delta_k.
// f_k is the error the node inherits before its own rounding; the per-node
// series are returned because the simultaneous f_k bound check needs them.
struct RecursiveErrors {
    ExpressionResult result;
    std::vector<WideReal> e, f;  // indexed by internal node 2..n; slots 0..1 zero
};
RecursiveErrors general_recursive(const RunTrace& trace, const SumTree& tree);

// First-order truncation sum_{k=2..n} s_k delta_k; residual is O(h^2 u^2).
ExpressionResult general_first_order(const RunTrace& trace);

// Shifted sequential error split into summation and centering parts:
//   e_n = sum_{k=2..n+1} t_k delta_k prod_{l=k+1..n+1}(1+delta_l)
//       + sum_{k=1..n+1} y_k eps_k  prod_{l=k..n+1}(1+delta_l)
// with t_{n+1} = s_n and y_{n+1} = nc. Requires a sequential-tree trace.
ExpressionResult shifted_sequential_exact(const RunTrace& trace);

// Compensated error and correction as a 2x2 matrix recursion:
//   [e_k; c_k] = P_k [e_{k-1} + s_{k-1}; c_{k-1} - x_k] + [-s_k; 0]
// started from e_1 = c_1 = 0. Returns the whole reconstructed sequence,
// indexed 1..n, for comparison against the trace.
struct CompState {
    WideReal e, c;
};
std::vector<CompState> comp_matrix_recursion(const RunTrace& trace);

// Unraveled product form of the same recursion:
//   [e_n; c_n] = sum_{j=2..n-1} (P_n ... P_{j+1}) Pt_j [s_j; x_j] + Pt_n [s_n; x_n].
ExpressionResult comp_explicit(const RunTrace& trace);

// Suffix-product expression
//   e_n = s_n sigma_n + sum_{j=3..n} x_j eta_j prod_{k=j..n}(1+sigma_k)
//       + sum_{j=2..n-1} (s_j sigma_j - c_j(1+eta_{j+1})) prod_{k=j+1..n}(1+sigma_k).
// The x_j eta_j sum must start at j=3 for the identity to be exact; the
// published form starts it at j=4, reachable via verbatim_eta_start for
// diagnostics (its residual is the dropped x_3 eta_3 term, order u^2).
// Also cross-checks the stepping recurrence (comp_recurrence_e) at k=3,4
// and throws std::logic_error if the trace is inconsistent with it.
ExpressionResult comp_expr_first(const RunTrace& trace, bool verbatim_eta_start = false);

// Correction-free expression e_n = s_n sigma_n + (X_n + E_{n-1})(1+sigma_n),
// with (for 2 <= k <= n-1)
//   X_k     = sum_{j=2..k} x_j(eta_j - delta_j) prod_{l=j..k}(1+beta_l)(1+eta_{l+1})
//   Theta_k = 1 - (1+delta_k)(1+beta_k)(1+eta_{k+1})
//   E_k     = e_k Theta_k + sum_{j=2..k-1} e_j(Theta_j + delta_{j+1})
//                                          prod_{l=j+1..k}(1+beta_l)(1+eta_{l+1})
// and the top term X_n = x_n eta_n + X_{n-1}. The published X_n carries a
// spurious (1+beta_n) on x_n eta_n (e_n cannot depend on beta_n, which only
// feeds c_n); verbatim_beta_n evaluates that form for diagnostics.
// Asserts the stepping identities e_k - a_k = E_k + X_k for k=2..n-1 and
// throws std::logic_error on violation. Needs n >= 3.
struct CompSecondSeries {
    ExpressionResult result;
    std::vector<WideReal> X;      // X[2..n], X[n] the top-term variant
    std::vector<WideReal> Theta;  // Theta[2..n-1]
    std::vector<WideReal> E;      // E[2..n-1]
};
CompSecondSeries comp_expr_second(const RunTrace& trace, bool verbatim_beta_n = false);

// First-order truncation s_n sigma_n + x_n eta_n + sum_{j=2..n-1} x_j(eta_j-delta_j);
// residual is O(u^2).
ExpressionResult comp_first_order(const RunTrace& trace);

// Second-order truncation with mu_k = eta_k - delta_k (mu_n = eta_n):
//   e_n = s_n sigma_n + (1+sigma_n) sum_{k=2..n} x_k mu_k
//       - sum_{k=2..n-1} s_k sigma_k (mu_{k+1} + delta_k + beta_k)
//       - sum_{k=2..n-1} x_k delta_k (mu_{k+1} + beta_k + eta_k);
// residual is O(u^3).
ExpressionResult comp_second_order(const RunTrace& trace);

// Stepping-recurrence ingredients: a_j = c_j (1 + eta_{j+1}) for j <= n-1,
// b_j = s_j sigma_j.
WideReal comp_a(const RunTrace& trace, int j);
WideReal comp_b(const RunTrace& trace, int j);

// e_k via the stepping recurrence, from e_2 = b_2:
//   e_k = (e_{k-1} - a_{k-1})(1+sigma_k) + x_k eta_k (1+sigma_k) + b_k.
// include_eta=false drops the middle term; the published k=3 display omits
// it, and that variant exists so tests can report the discrepancy.
WideReal comp_recurrence_e(const RunTrace& trace, int k, bool include_eta = true);

}  // namespace fpsum
