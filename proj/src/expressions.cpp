#include "fpsum/expressions.hpp"

#include <algorithm>
#include <stdexcept>

namespace fpsum {

namespace {

WideReal sum_abs_x(const RunTrace& tr) {
    WideReal s(0.0);
    for (int k = 1; k <= tr.n; ++k) s += abs(tr.x[static_cast<size_t>(k)]);
    return s;
}

// Measured per-step error for compensated traces.
WideReal trace_e(const RunTrace& tr, int k) {
    return tr.s_hat[static_cast<size_t>(k)] - tr.s_exact[static_cast<size_t>(k)];
}

void require_algo(const RunTrace& tr, Algorithm want, const char* who) {
    if (tr.algo != want)
        throw std::invalid_argument(std::string(who) + " needs a " + algorithm_name(want) +
                                    " trace, got " + algorithm_name(tr.algo));
}

// The delta series is read under the caller's tree, so the shapes must agree,
// not just the sizes.
void require_tree(const RunTrace& tr, const SumTree& tree, const char* who) {
    if (tree.leaf_count() != tr.n || (tr.tree.has_value() && !(*tr.tree == tree)))
        throw std::invalid_argument(std::string(who) + ": tree does not match trace");
}

ExpressionResult make_result(std::string id, WideReal value, const RunTrace& tr) {
    ExpressionResult r;
    r.id = std::move(id);
    r.residual = value - tr.e_n;
    r.value = std::move(value);
    return r;
}

}  // namespace

WideReal oracle_slack(const RunTrace& trace) {
    return WideReal::pow2(-(oracle::bits() / 2)) * sum_abs_x(trace);
}

ExpressionResult general_explicit(const RunTrace& trace, const SumTree& tree) {
    require_algo(trace, Algorithm::General, "general_explicit");
    require_tree(trace, tree, "general_explicit");
    const WideReal one(1.0);
    WideReal total(0.0);
    for (int k = 2; k <= trace.n; ++k) {
        WideReal term = trace.s_exact[static_cast<size_t>(k)] * trace.delta[static_cast<size_t>(k)];
        for (int j : tree.ancestors(k)) term *= one + trace.delta[static_cast<size_t>(j)];
        total += term;
    }
    return make_result("general_explicit", std::move(total), trace);
}

RecursiveErrors general_recursive(const RunTrace& trace, const SumTree& tree) {
    require_algo(trace, Algorithm::General, "general_recursive");
    require_tree(trace, tree, "general_recursive");
    const int n = trace.n;
    RecursiveErrors out;
    out.e.assign(static_cast<size_t>(n) + 1, WideReal(0.0));
    out.f.assign(static_cast<size_t>(n) + 1, WideReal(0.0));
    auto child_e = [&](const NodeRef& ref) {
        return ref.kind == NodeRef::Leaf ? WideReal(0.0) : out.e[static_cast<size_t>(ref.index)];
    };
    for (int k = 2; k <= n; ++k) {
        const SumTree::Node& node = tree.node(k);
        const size_t i = static_cast<size_t>(k);
        out.f[i] = child_e(node.left) + child_e(node.right);
        out.e[i] = out.f[i] + (trace.s_exact[i] + out.f[i]) * trace.delta[i];
    }
    WideReal value = n == 1 ? WideReal(0.0) : out.e[static_cast<size_t>(n)];
    out.result = make_result("general_recursive", std::move(value), trace);
    return out;
}

ExpressionResult general_first_order(const RunTrace& trace) {
    require_algo(trace, Algorithm::General, "general_first_order");
    WideReal total(0.0);
    for (int k = 2; k <= trace.n; ++k)
        total += trace.s_exact[static_cast<size_t>(k)] * trace.delta[static_cast<size_t>(k)];
    return make_result("general_first_order", std::move(total), trace);
}

ExpressionResult shifted_sequential_exact(const RunTrace& trace) {
    require_algo(trace, Algorithm::Shifted, "shifted_sequential_exact");
    const int n = trace.n;
    if (!trace.tree || !(*trace.tree == SumTree::sequential(n)))
        throw std::invalid_argument("shifted_sequential_exact needs a sequential-tree trace");
    const WideReal one(1.0);
    // suffix[k] = prod_{l=k..n+1} (1 + delta_l); suffix[n+2] = 1
    std::vector<WideReal> suffix(static_cast<size_t>(n) + 3, one);
    for (int k = n + 1; k >= 1; --k)
        suffix[static_cast<size_t>(k)] =
            suffix[static_cast<size_t>(k) + 1] * (one + trace.delta[static_cast<size_t>(k)]);
    WideReal total(0.0);
    for (int k = 2; k <= n + 1; ++k)
        total += trace.t_exact[static_cast<size_t>(k)] * trace.delta[static_cast<size_t>(k)] *
                 suffix[static_cast<size_t>(k) + 1];
    for (int k = 1; k <= n + 1; ++k)
        total += trace.y_exact[static_cast<size_t>(k)] * trace.eps[static_cast<size_t>(k)] *
                 suffix[static_cast<size_t>(k)];
    return make_result("shifted_sequential_exact", std::move(total), trace);
}

namespace {

// Entries of P_k and Pt_k, built from one trace position.
struct Mat2 {
    WideReal a11, a12, a21, a22;
};

Mat2 comp_P(const RunTrace& tr, int k) {
    const WideReal one(1.0);
    const size_t i = static_cast<size_t>(k);
    const WideReal& sg = tr.sigma[i];
    const WideReal& et = tr.eta[i];
    const WideReal& dl = tr.delta[i];
    const WideReal& bt = tr.beta[i];
    WideReal gamma = (one + sg) * (one + dl);
    WideReal psi = (one + dl) * (one + bt);
    Mat2 p;
    p.a11 = one + sg;
    p.a12 = -((one + et) * (one + sg));
    p.a21 = sg * psi;
    p.a22 = (one + et) * (one - gamma) * (one + bt);
    return p;
}

Mat2 comp_Pt(const RunTrace& tr, int k) {
    const WideReal one(1.0);
    const size_t i = static_cast<size_t>(k);
    const WideReal& sg = tr.sigma[i];
    const WideReal& et = tr.eta[i];
    const WideReal& dl = tr.delta[i];
    const WideReal& bt = tr.beta[i];
    WideReal gamma = (one + sg) * (one + dl);
    WideReal psi = (one + dl) * (one + bt);
    Mat2 p;
    p.a11 = sg;
    p.a12 = et * (one + sg);
    p.a21 = sg * psi;
    p.a22 = (one + bt) * (dl + et * (gamma - one));
    return p;
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    Mat2 m;
    m.a11 = a.a11 * b.a11 + a.a12 * b.a21;
    m.a12 = a.a11 * b.a12 + a.a12 * b.a22;
    m.a21 = a.a21 * b.a11 + a.a22 * b.a21;
    m.a22 = a.a21 * b.a12 + a.a22 * b.a22;
    return m;
}

CompState mat_apply(const Mat2& m, const WideReal& u, const WideReal& v) {
    CompState s;
    s.e = m.a11 * u + m.a12 * v;
    s.c = m.a21 * u + m.a22 * v;
    return s;
}

}  // namespace

std::vector<CompState> comp_matrix_recursion(const RunTrace& trace) {
    require_algo(trace, Algorithm::Compensated, "comp_matrix_recursion");
    const int n = trace.n;
    std::vector<CompState> st(static_cast<size_t>(n) + 1, CompState{WideReal(0.0), WideReal(0.0)});
    for (int k = 2; k <= n; ++k) {
        const size_t i = static_cast<size_t>(k);
        Mat2 p = comp_P(trace, k);
        CompState prev = st[i - 1];
        CompState next = mat_apply(p, prev.e + trace.s_exact[i - 1], prev.c - trace.x[i]);
        next.e -= trace.s_exact[i];
        st[i] = next;
    }
    return st;
}

ExpressionResult comp_explicit(const RunTrace& trace) {
    require_algo(trace, Algorithm::Compensated, "comp_explicit");
    const int n = trace.n;
    if (n < 2) return make_result("comp_explicit", WideReal(0.0), trace);
    WideReal e(0.0), c(0.0);
    Mat2 m{WideReal(1.0), WideReal(0.0), WideReal(0.0), WideReal(1.0)};  // P_n ... P_{j+1}
    for (int j = n; j >= 2; --j) {
        const size_t i = static_cast<size_t>(j);
        Mat2 t = mat_mul(m, comp_Pt(trace, j));
        CompState term = mat_apply(t, trace.s_exact[i], trace.x[i]);
        e += term.e;
        c += term.c;
        if (j > 2) m = mat_mul(m, comp_P(trace, j));
    }
    return make_result("comp_explicit", std::move(e), trace);
}

WideReal comp_a(const RunTrace& trace, int j) {
    if (j < 2 || j > trace.n - 1) throw std::invalid_argument("comp_a: j out of range");
    const size_t i = static_cast<size_t>(j);
    return trace.c_hat[i] * (WideReal(1.0) + trace.eta[i + 1]);
}

WideReal comp_b(const RunTrace& trace, int j) {
    if (j < 2 || j > trace.n) throw std::invalid_argument("comp_b: j out of range");
    const size_t i = static_cast<size_t>(j);
    return trace.s_exact[i] * trace.sigma[i];
}

WideReal comp_recurrence_e(const RunTrace& trace, int k, bool include_eta) {
    require_algo(trace, Algorithm::Compensated, "comp_recurrence_e");
    if (k < 2 || k > trace.n) throw std::invalid_argument("comp_recurrence_e: k out of range");
    const WideReal one(1.0);
    WideReal e = comp_b(trace, 2);
    for (int j = 3; j <= k; ++j) {
        const size_t i = static_cast<size_t>(j);
        e = (e - comp_a(trace, j - 1)) * (one + trace.sigma[i]) + comp_b(trace, j);
        if (include_eta) e += trace.x[i] * trace.eta[i] * (one + trace.sigma[i]);
    }
    return e;
}

ExpressionResult comp_expr_first(const RunTrace& trace, bool verbatim_eta_start) {
    require_algo(trace, Algorithm::Compensated, "comp_expr_first");
    const int n = trace.n;
    if (n < 2) throw std::invalid_argument("comp_expr_first needs n >= 2");
    const WideReal one(1.0);
    // suffix[j] = prod_{k=j..n} (1 + sigma_k); suffix[n+1] = 1
    std::vector<WideReal> suffix(static_cast<size_t>(n) + 2, one);
    for (int j = n; j >= 2; --j)
        suffix[static_cast<size_t>(j)] =
            suffix[static_cast<size_t>(j) + 1] * (one + trace.sigma[static_cast<size_t>(j)]);

    WideReal total = comp_b(trace, n);
    const int eta_start = verbatim_eta_start ? 4 : 3;
    for (int j = eta_start; j <= n; ++j) {
        const size_t i = static_cast<size_t>(j);
        total += trace.x[i] * trace.eta[i] * suffix[i];
    }
    for (int j = 2; j <= n - 1; ++j)
        total += (comp_b(trace, j) - comp_a(trace, j)) * suffix[static_cast<size_t>(j) + 1];

    // The same suffix expression, stepped one k at a time, must land on the
    // measured per-step errors; spot-check the first two steps.
    WideReal slack = oracle_slack(trace);
    for (int k = 3; k <= std::min(n, 4); ++k) {
        WideReal diff = comp_recurrence_e(trace, k) - trace_e(trace, k);
        if (abs(diff) > slack)
            throw std::logic_error("compensated trace violates the stepping recurrence");
    }
    return make_result(verbatim_eta_start ? "comp_expr_first_verbatim" : "comp_expr_first",
                       std::move(total), trace);
}

CompSecondSeries comp_expr_second(const RunTrace& trace, bool verbatim_beta_n) {
    require_algo(trace, Algorithm::Compensated, "comp_expr_second");
    const int n = trace.n;
    if (n < 3) throw std::invalid_argument("comp_expr_second needs n >= 3");
    const WideReal one(1.0);

    CompSecondSeries out;
    out.X.assign(static_cast<size_t>(n) + 1, WideReal(0.0));
    out.Theta.assign(static_cast<size_t>(n) + 1, WideReal(0.0));
    out.E.assign(static_cast<size_t>(n) + 1, WideReal(0.0));

    // grow[k] = (1+beta_k)(1+eta_{k+1}), the factor every X/E term picks up
    // when the recursion steps from k-1 to k.
    std::vector<WideReal> grow(static_cast<size_t>(n) + 1, one);
    for (int k = 2; k <= n - 1; ++k) {
        const size_t i = static_cast<size_t>(k);
        grow[i] = (one + trace.beta[i]) * (one + trace.eta[i + 1]);
        out.Theta[i] = one - (one + trace.delta[i]) * grow[i];
    }

    // Definitional sums for X_k and E_k, k = 2..n-1.
    for (int k = 2; k <= n - 1; ++k) {
        const size_t ik = static_cast<size_t>(k);
        WideReal xsum(0.0);
        for (int j = 2; j <= k; ++j) {
            const size_t ij = static_cast<size_t>(j);
            WideReal term = trace.x[ij] * (trace.eta[ij] - trace.delta[ij]);
            for (int l = j; l <= k; ++l) term *= grow[static_cast<size_t>(l)];
            xsum += term;
        }
        out.X[ik] = xsum;
        WideReal esum = trace_e(trace, k) * out.Theta[ik];
        for (int j = 2; j <= k - 1; ++j) {
            const size_t ij = static_cast<size_t>(j);
            WideReal term = trace_e(trace, j) * (out.Theta[ij] + trace.delta[ij + 1]);
            for (int l = j + 1; l <= k; ++l) term *= grow[static_cast<size_t>(l)];
            esum += term;
        }
        out.E[ik] = esum;
    }

    // Stepping identities e_k - a_k = E_k + X_k.
    WideReal slack = oracle_slack(trace);
    for (int k = 2; k <= n - 1; ++k) {
        const size_t i = static_cast<size_t>(k);
        WideReal diff = trace_e(trace, k) - comp_a(trace, k) - (out.E[i] + out.X[i]);
        if (abs(diff) > slack)
            throw std::logic_error("compensated trace violates e_k - a_k = E_k + X_k");
    }

    const size_t in = static_cast<size_t>(n);
    WideReal top = trace.x[in] * trace.eta[in];
    if (verbatim_beta_n) top *= one + trace.beta[in];
    out.X[in] = top + out.X[in - 1];

    WideReal value = comp_b(trace, n) + (out.X[in] + out.E[in - 1]) * (one + trace.sigma[in]);
    out.result = make_result(verbatim_beta_n ? "comp_expr_second_verbatim" : "comp_expr_second",
                             std::move(value), trace);
    return out;
}

ExpressionResult comp_first_order(const RunTrace& trace) {
    require_algo(trace, Algorithm::Compensated, "comp_first_order");
    const int n = trace.n;
    if (n < 2) throw std::invalid_argument("comp_first_order needs n >= 2");
    const size_t in = static_cast<size_t>(n);
    WideReal total = comp_b(trace, n) + trace.x[in] * trace.eta[in];
    for (int j = 2; j <= n - 1; ++j) {
        const size_t i = static_cast<size_t>(j);
        total += trace.x[i] * (trace.eta[i] - trace.delta[i]);
    }
    return make_result("comp_first_order", std::move(total), trace);
}

ExpressionResult comp_second_order(const RunTrace& trace) {
    require_algo(trace, Algorithm::Compensated, "comp_second_order");
    const int n = trace.n;
    if (n < 2) throw std::invalid_argument("comp_second_order needs n >= 2");
    const WideReal one(1.0);
    const size_t in = static_cast<size_t>(n);
    auto mu = [&](int k) {
        const size_t i = static_cast<size_t>(k);
        return k == n ? trace.eta[i] : trace.eta[i] - trace.delta[i];
    };
    WideReal xmu(0.0);
    for (int k = 2; k <= n; ++k) xmu += trace.x[static_cast<size_t>(k)] * mu(k);
    WideReal total = comp_b(trace, n) + (one + trace.sigma[in]) * xmu;
    for (int k = 2; k <= n - 1; ++k) {
        const size_t i = static_cast<size_t>(k);
        total -= trace.s_exact[i] * trace.sigma[i] * (mu(k + 1) + trace.delta[i] + trace.beta[i]);
        total -= trace.x[i] * trace.delta[i] * (mu(k + 1) + trace.beta[i] + trace.eta[i]);
    }
    return make_result("comp_second_order", std::move(total), trace);
}

}  // namespace fpsum
