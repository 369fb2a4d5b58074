#include "fpsum/bounds.hpp"

#include <stdexcept>

namespace fpsum {

namespace {

void check_prob(double p, const char* name) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument(std::string(name) + " must be in (0,1)");
}

WideReal sum_abs(std::span<const WideReal> v) {
    WideReal s(0.0);
    for (const WideReal& w : v) s += abs(w);
    return s;
}

WideReal sum_sq(std::span<const WideReal> v) {
    WideReal s(0.0);
    for (const WideReal& w : v) s += w * w;
    return s;
}

WideReal l2_norm(std::span<const WideReal> v) { return sqrt(sum_sq(v)); }

// (1+u)^m - 1
WideReal gamma_m(const WideReal& u, unsigned long m) {
    return pow_ui(WideReal(1.0) + u, m) - WideReal(1.0);
}

}  // namespace

WideReal confidence_factor(double delta_fail) {
    check_prob(delta_fail, "delta");
    return sqrt(WideReal(2.0) * log(WideReal(2.0) / WideReal(delta_fail)));
}

WideReal lambda_general(int n, double eta_fail) {
    check_prob(eta_fail, "eta");
    return sqrt(WideReal(2.0) * log(WideReal(2.0) * WideReal(static_cast<long>(n)) /
                                    WideReal(eta_fail)));
}

WideReal lambda_shifted(int n, double eta_fail) {
    check_prob(eta_fail, "eta");
    return sqrt(WideReal(2.0) * log(WideReal(2.0) * WideReal(static_cast<long>(2 * n + 1)) /
                                    WideReal(eta_fail)));
}

WideReal azuma_radius(std::span<const WideReal> c, double delta_fail) {
    return l2_norm(c) * confidence_factor(delta_fail);
}

BoundReport det_bound_general(std::span<const WideReal> x, const SumTree& tree,
                              const FpFormat& fmt, RoundingMode mode, const RunTrace* trace,
                              bool verbatim_aggregate) {
    const int n = tree.leaf_count();
    if (static_cast<size_t>(n) != x.size())
        throw std::invalid_argument("det_bound_general: tree does not match input size");
    const WideReal u = effective_u(fmt, mode);
    const WideReal one(1.0);
    const int h = tree.height();

    std::vector<WideReal> s = tree.exact_partial_sums(x);
    WideReal abs_partials(0.0);
    for (int k = 2; k <= n; ++k) abs_partials += abs(s[static_cast<size_t>(k)]);
    WideReal growth = pow_ui(one + u, static_cast<unsigned long>(h));

    BoundReport r;
    r.id = "det_general";
    r.value = u * growth * abs_partials;
    r.constituents["u"] = u;
    r.constituents["h"] = WideReal(static_cast<long>(h));
    r.constituents["n"] = WideReal(static_cast<long>(n));
    r.constituents["sum_abs_partials"] = abs_partials;

    WideReal abs_x = sum_abs(x);
    r.constituents["aggregate"] = u * growth * WideReal(static_cast<long>(h)) * abs_x;
    WideReal hu = WideReal(static_cast<long>(h)) * u;
    bool hu_ok = hu < one;
    r.flags["hu_lt_1"] = hu_ok;
    if (verbatim_aggregate && hu_ok)
        r.constituents["aggregate_verbatim"] = hu * hu / (one - hu) * abs_x;

    if (trace != nullptr && trace->algo == Algorithm::General &&
        !trace->s_hat.empty()) {
        WideReal computed(0.0);
        for (int k = 2; k <= n; ++k) computed += abs(trace->s_hat[static_cast<size_t>(k)]);
        r.constituents["higham_comparator"] = u * computed;
    }
    return r;
}

BoundReport prob_bound_first_order(std::span<const WideReal> partial_sums, const FpFormat& fmt,
                                   double delta_fail, RoundingMode mode) {
    const WideReal u = effective_u(fmt, mode);
    BoundReport r;
    r.id = "prob_first_order";
    WideReal norm = l2_norm(partial_sums);
    r.value = u * norm * confidence_factor(delta_fail);
    r.constituents["u"] = u;
    r.constituents["partial_sums_l2"] = norm;
    r.constituents["delta"] = WideReal(delta_fail);
    return r;
}

namespace {

BoundReport model_bound(std::span<const WideReal> partial_sums, int h, int n, const FpFormat& fmt,
                        double delta_fail, double eta_fail, RoundingMode mode, bool exp_form) {
    const WideReal u = effective_u(fmt, mode);
    const WideReal one(1.0);
    WideReal lam = lambda_general(n, eta_fail);
    WideReal z = lam * sqrt(WideReal(static_cast<long>(h))) * u;
    WideReal norm = l2_norm(partial_sums);

    BoundReport r;
    r.id = exp_form ? "prob_model1" : "prob_model2";
    r.constituents["u"] = u;
    r.constituents["h"] = WideReal(static_cast<long>(h));
    r.constituents["n"] = WideReal(static_cast<long>(n));
    r.constituents["lambda"] = lam;
    r.constituents["lambda_sqrth_u"] = z;
    r.constituents["partial_sums_l2"] = norm;
    r.constituents["delta"] = WideReal(delta_fail);
    r.constituents["eta"] = WideReal(eta_fail);
    r.constituents["failure_budget"] = WideReal(delta_fail + eta_fail);
    r.flags["lambda_sqrth_u_lt_1"] = z < one;
    if (exp_form) {
        r.value = u * exp(z) * norm * confidence_factor(delta_fail);
    } else if (z < one) {
        r.value = u / (one - z) * norm * confidence_factor(delta_fail);
    } else {
        r.valid = false;
        r.value = WideReal(0.0);
    }
    return r;
}

}  // namespace

BoundReport prob_bound_model1(std::span<const WideReal> partial_sums, int h, int n,
                              const FpFormat& fmt, double delta_fail, double eta_fail,
                              RoundingMode mode) {
    return model_bound(partial_sums, h, n, fmt, delta_fail, eta_fail, mode, true);
}

BoundReport prob_bound_model2(std::span<const WideReal> partial_sums, int h, int n,
                              const FpFormat& fmt, double delta_fail, double eta_fail,
                              RoundingMode mode) {
    return model_bound(partial_sums, h, n, fmt, delta_fail, eta_fail, mode, false);
}

namespace {

// Shared geometry of the shifted sequential bounds: prefix sums, centered
// terms, and the k = n+1 convention t_{n+1} = s_n, y_{n+1} = nc.
struct ShiftedTerms {
    WideReal sum_t_abs;   // sum_{k=2..n} |s_k - kc|
    WideReal sum_y_abs;   // sum_{k=1..n} |x_k - c|
    WideReal s_n;
    WideReal nc;
    WideReal max_term;    // max_{1<=k<=n+1}(|s_k - kc| + |x_k - c|)
};

ShiftedTerms shifted_terms(std::span<const WideReal> x, const WideReal& c) {
    const int n = static_cast<int>(x.size());
    ShiftedTerms t{WideReal(0.0), WideReal(0.0), WideReal(0.0), WideReal(0.0), WideReal(0.0)};
    WideReal s(0.0), kc(0.0);
    for (int k = 1; k <= n; ++k) {
        s += x[static_cast<size_t>(k) - 1];
        kc += c;
        WideReal tk = abs(s - kc);
        WideReal yk = abs(x[static_cast<size_t>(k) - 1] - c);
        if (k >= 2) t.sum_t_abs += tk;
        t.sum_y_abs += yk;
        WideReal term = tk + yk;
        if (term > t.max_term) t.max_term = term;
    }
    t.s_n = s;
    t.nc = kc;
    WideReal last = abs(t.s_n) + abs(t.nc);
    if (last > t.max_term) t.max_term = last;
    return t;
}

}  // namespace

BoundReport shifted_seq_det_bound(std::span<const WideReal> x, const WideReal& c,
                                  const FpFormat& fmt, RoundingMode mode) {
    const int n = static_cast<int>(x.size());
    const WideReal u = effective_u(fmt, mode);
    ShiftedTerms t = shifted_terms(x, c);
    BoundReport r;
    r.id = "shifted_seq_det";
    r.value = u * pow_ui(WideReal(1.0) + u, static_cast<unsigned long>(n)) *
              (t.sum_t_abs + t.sum_y_abs + abs(t.s_n) + abs(t.nc));
    r.constituents["u"] = u;
    r.constituents["n"] = WideReal(static_cast<long>(n));
    r.constituents["sum_abs_t"] = t.sum_t_abs;
    r.constituents["sum_abs_y"] = t.sum_y_abs;
    r.constituents["abs_s_n"] = abs(t.s_n);
    r.constituents["abs_nc"] = abs(t.nc);
    return r;
}

BoundReport shifted_seq_prob_bound(std::span<const WideReal> x, const WideReal& c,
                                   const FpFormat& fmt, double delta_fail, RoundingMode mode) {
    const int n = static_cast<int>(x.size());
    const WideReal u = effective_u(fmt, mode);
    ShiftedTerms t = shifted_terms(x, c);
    WideReal cf = confidence_factor(delta_fail);
    WideReal g = gamma_m(u, static_cast<unsigned long>(2 * (n + 2)));

    BoundReport r;
    r.id = "shifted_seq_prob";
    r.value = t.max_term * sqrt(u * g / WideReal(2.0)) * cf;
    r.constituents["u"] = u;
    r.constituents["n"] = WideReal(static_cast<long>(n));
    r.constituents["max_term"] = t.max_term;
    r.constituents["gamma_2n4"] = g;
    r.constituents["delta"] = WideReal(delta_fail);
    r.constituents["simplified"] =
        t.max_term * sqrt(WideReal(static_cast<long>(n + 2))) * u * cf;
    return r;
}

BoundReport shifted_gen_prob_bound(std::span<const WideReal> x, const WideReal& c,
                                   const SumTree& tree, const FpFormat& fmt, double delta_fail,
                                   double eta_fail, int model, RoundingMode mode) {
    const int n = tree.leaf_count();
    if (static_cast<size_t>(n) != x.size())
        throw std::invalid_argument("shifted_gen_prob_bound: tree does not match input size");
    if (model != 1 && model != 2)
        throw std::invalid_argument("shifted_gen_prob_bound: model must be 1 or 2");
    const WideReal u = effective_u(fmt, mode);
    const WideReal one(1.0);

    std::vector<WideReal> y(static_cast<size_t>(n));
    WideReal sum_y_sq(0.0);
    for (int k = 0; k < n; ++k) {
        y[static_cast<size_t>(k)] = x[static_cast<size_t>(k)] - c;
        sum_y_sq += y[static_cast<size_t>(k)] * y[static_cast<size_t>(k)];
    }
    std::vector<WideReal> t = tree.exact_partial_sums(y);
    WideReal sum_t_sq(0.0);
    for (int k = 2; k <= n; ++k) sum_t_sq += t[static_cast<size_t>(k)] * t[static_cast<size_t>(k)];
    WideReal s_n = exact_sum(x);
    WideReal radicand = s_n * s_n + sum_t_sq + sum_y_sq;

    const int h = tree.height();
    WideReal lam = lambda_shifted(n, eta_fail);
    WideReal z = lam * sqrt(WideReal(static_cast<long>(h + 2))) * u;
    WideReal cf = confidence_factor(delta_fail);

    BoundReport r;
    r.id = model == 1 ? "shifted_gen_prob_model1" : "shifted_gen_prob_model2";
    r.constituents["u"] = u;
    r.constituents["h_plus_2"] = WideReal(static_cast<long>(h + 2));
    r.constituents["node_count"] = WideReal(static_cast<long>(2 * n + 1));
    r.constituents["lambda"] = lam;
    r.constituents["lambda_sqrth_u"] = z;
    r.constituents["radicand"] = radicand;
    r.constituents["delta"] = WideReal(delta_fail);
    r.constituents["eta"] = WideReal(eta_fail);
    r.constituents["failure_budget"] = WideReal(delta_fail + eta_fail);
    r.flags["lambda_sqrth_u_lt_1"] = z < one;
    if (model == 1) {
        r.value = u * exp(z) * sqrt(radicand) * cf;
    } else if (z < one) {
        r.value = u / (one - z) * sqrt(radicand) * cf;
    } else {
        r.valid = false;
        r.value = WideReal(0.0);
    }
    return r;
}

BoundReport comp_first_order_bound(std::span<const WideReal> x, const FpFormat& fmt,
                                   RoundingMode mode) {
    const WideReal u = effective_u(fmt, mode);
    BoundReport r;
    r.id = "comp_first_order";
    WideReal l1 = sum_abs(x);
    r.value = WideReal(3.0) * u * l1;
    r.constituents["u"] = u;
    r.constituents["x_l1"] = l1;
    return r;
}

BoundReport comp_second_order_det_bound(std::span<const WideReal> x, const FpFormat& fmt,
                                        RoundingMode mode) {
    const WideReal u = effective_u(fmt, mode);
    const long n = static_cast<long>(x.size());
    BoundReport r;
    r.id = "comp_second_order_det";
    WideReal l1 = sum_abs(x);
    r.value = (WideReal(3.0) * u + WideReal(4.0) * WideReal(n) * u * u) * l1;
    r.constituents["u"] = u;
    r.constituents["n"] = WideReal(n);
    r.constituents["x_l1"] = l1;
    return r;
}

BoundReport comp_prob_bound(std::span<const WideReal> x, std::span<const WideReal> s_partials,
                            const FpFormat& fmt, double delta_fail, int order,
                            RoundingMode mode) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("comp_prob_bound: order must be 1 or 2");
    if (s_partials.size() != x.size())
        throw std::invalid_argument("comp_prob_bound: need one prefix sum per input");
    if (x.empty()) throw std::invalid_argument("comp_prob_bound: empty input");
    const WideReal u = effective_u(fmt, mode);
    const size_t n = x.size();
    WideReal cf = confidence_factor(delta_fail);
    WideReal x_l2 = l2_norm(x);
    const WideReal& s_n = s_partials[n - 1];

    BoundReport r;
    r.constituents["u"] = u;
    r.constituents["x_l2"] = x_l2;
    r.constituents["abs_s_n"] = abs(s_n);
    r.constituents["delta"] = WideReal(delta_fail);
    if (order == 1) {
        r.id = "comp_prob_first";
        r.value = u * (WideReal(2.0) * x_l2 + abs(s_n)) * cf;
        return r;
    }
    r.id = "comp_prob_second";
    WideReal sum_prefix_sq(0.0);
    for (size_t k = 0; k + 1 < n; ++k) sum_prefix_sq += s_partials[k] * s_partials[k];
    WideReal tail = sqrt(s_n * s_n + WideReal(16.0) * u * u * sum_prefix_sq);
    WideReal lead = WideReal(2.0) * (WideReal(1.0) + WideReal(3.0) * u) * x_l2;
    r.value = u * (lead + tail) * cf;
    r.constituents["sum_prefix_sq"] = sum_prefix_sq;
    if (n >= 2) {
        WideReal x_l1 = sum_abs(x);
        r.constituents["l1_relaxation"] =
            u *
            (lead + sqrt(WideReal(1.0) +
                         WideReal(16.0) * WideReal(static_cast<long>(n - 2)) * u * u) *
                        x_l1) *
            cf;
    }
    return r;
}

WideReal relative_bound_shifted(std::span<const WideReal> x, const WideReal& c,
                                const FpFormat& fmt, double delta_fail, RoundingMode mode) {
    const int n = static_cast<int>(x.size());
    const WideReal u = effective_u(fmt, mode);
    ShiftedTerms t = shifted_terms(x, c);
    if (t.s_n.is_zero()) throw ZeroSumError("relative bound undefined for zero sum");
    return u * sqrt(WideReal(static_cast<long>(n + 2))) * (t.max_term / abs(t.s_n)) *
           confidence_factor(delta_fail);
}

WideReal relative_bound_comp(std::span<const WideReal> x, const FpFormat& fmt, double delta_fail,
                             RoundingMode mode) {
    const WideReal u = effective_u(fmt, mode);
    WideReal s_n = exact_sum(x);
    if (s_n.is_zero()) throw ZeroSumError("relative bound undefined for zero sum");
    return u * (WideReal(2.0) * l2_norm(x) + abs(s_n)) / abs(s_n) * confidence_factor(delta_fail);
}

BoundReport fk_prob_radius(const WideReal& sum_sq_descendants, int h, int n, const FpFormat& fmt,
                           double eta_fail, RoundingMode mode) {
    const WideReal u = effective_u(fmt, mode);
    const WideReal one(1.0);
    WideReal lam = lambda_general(n, eta_fail);
    WideReal z = lam * sqrt(WideReal(static_cast<long>(h))) * u;
    BoundReport r;
    r.id = "fk_radius";
    r.constituents["u"] = u;
    r.constituents["lambda"] = lam;
    r.constituents["lambda_sqrth_u"] = z;
    r.constituents["eta"] = WideReal(eta_fail);
    r.flags["lambda_sqrth_u_lt_1"] = z < one;
    if (z < one) {
        r.value = lam * u / (one - z) * sqrt(sum_sq_descendants);
    } else {
        r.valid = false;
        r.value = WideReal(0.0);
    }
    return r;
}

}  // namespace fpsum
