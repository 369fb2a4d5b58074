#include "fpsum/algorithms.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace fpsum {

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::General: return "general";
        case Algorithm::Shifted: return "shifted";
        case Algorithm::Compensated: return "compensated";
    }
    return "?";
}

WideReal exact_sum(std::span<const WideReal> x) {
    WideReal s(0.0);
    for (const WideReal& v : x) s += v;
    return s;
}

namespace {

void check_inputs(std::span<const WideReal> x, const FpFormat& fmt) {
    if (x.empty()) throw std::invalid_argument("need at least one input");
    for (size_t i = 0; i < x.size(); ++i) {
        if (!representable(x[i], fmt))
            throw std::invalid_argument("input " + std::to_string(i + 1) +
                                        " is not representable in " + fmt.name);
    }
}

// Copies a span into the 1-based layout traces use.
std::vector<WideReal> one_based(std::span<const WideReal> x) {
    std::vector<WideReal> out(x.size() + 1);
    for (size_t i = 0; i < x.size(); ++i) out[i + 1] = x[i];
    return out;
}

const WideReal& operand(const NodeRef& ref, const std::vector<WideReal>& x,
                        const std::vector<WideReal>& val) {
    return ref.kind == NodeRef::Leaf ? x[static_cast<size_t>(ref.index)]
                                     : val[static_cast<size_t>(ref.index)];
}

}  // namespace

RunTrace general_sum(const SumTree& tree, std::span<const WideReal> x, const FpFormat& fmt,
                     const RoundingSpec& spec, bool full_trace) {
    const int n = static_cast<int>(x.size());
    if (tree.leaf_count() != n) throw std::invalid_argument("tree size does not match input size");
    check_inputs(x, fmt);

    RunTrace tr;
    tr.algo = Algorithm::General;
    tr.fmt = fmt;
    tr.rounding = spec;
    tr.n = n;
    tr.x = one_based(x);
    tr.tree = tree;

    Rounder rnd(fmt, spec);
    std::vector<WideReal> val(static_cast<size_t>(n) + 1);
    if (full_trace) {
        tr.s_hat.resize(static_cast<size_t>(n) + 1);
        tr.delta.resize(static_cast<size_t>(n) + 1);
    }
    for (int k = 2; k <= n; ++k) {
        const SumTree::Node& node = tree.node(k);
        RoundResult r = fp_add(operand(node.left, tr.x, val), operand(node.right, tr.x, val), rnd,
                               full_trace);
        val[static_cast<size_t>(k)] = r.value;
        if (full_trace) {
            tr.s_hat[static_cast<size_t>(k)] = r.value;
            tr.delta[static_cast<size_t>(k)] = r.delta;
        }
    }
    if (full_trace) tr.s_exact = tree.exact_partial_sums(x);

    tr.s_hat_n = n == 1 ? tr.x[1] : val[static_cast<size_t>(n)];
    tr.s_n = full_trace && n > 1 ? tr.s_exact[static_cast<size_t>(n)] : exact_sum(x);
    tr.e_n = tr.s_hat_n - tr.s_n;
    return tr;
}

RunTrace shifted_sum(const SumTree& tree, std::span<const WideReal> x, const WideReal& c,
                     const FpFormat& fmt, const RoundingSpec& spec, bool full_trace) {
    const int n = static_cast<int>(x.size());
    if (tree.leaf_count() != n) throw std::invalid_argument("tree size does not match input size");
    check_inputs(x, fmt);
    if (!representable(c, fmt)) throw std::invalid_argument("shift is not representable in " + fmt.name);

    RunTrace tr;
    tr.algo = Algorithm::Shifted;
    tr.fmt = fmt;
    tr.rounding = spec;
    tr.n = n;
    tr.x = one_based(x);
    tr.shift_c = c;
    tr.tree = tree;

    Rounder rnd(fmt, spec);
    const size_t m = static_cast<size_t>(n) + 2;  // room for index n+1
    std::vector<WideReal> yhat(m);
    if (full_trace) {
        tr.eps.resize(m);
        tr.y_exact.resize(m);
        tr.t_hat.resize(m);
        tr.delta.resize(m);  // delta[1] stays zero by convention
    }

    for (int k = 1; k <= n; ++k) {
        RoundResult r = fp_sub(tr.x[static_cast<size_t>(k)], c, rnd, full_trace);
        yhat[static_cast<size_t>(k)] = r.value;
        if (full_trace) {
            tr.eps[static_cast<size_t>(k)] = r.delta;
            tr.y_exact[static_cast<size_t>(k)] = tr.x[static_cast<size_t>(k)] - c;
        }
    }

    // Tree sum of the computed y values.
    std::vector<WideReal> val(static_cast<size_t>(n) + 1);
    for (int k = 2; k <= n; ++k) {
        const SumTree::Node& node = tree.node(k);
        RoundResult r =
            fp_add(operand(node.left, yhat, val), operand(node.right, yhat, val), rnd, full_trace);
        val[static_cast<size_t>(k)] = r.value;
        if (full_trace) {
            tr.t_hat[static_cast<size_t>(k)] = r.value;
            tr.delta[static_cast<size_t>(k)] = r.delta;
        }
    }
    const WideReal& tree_total = n == 1 ? yhat[1] : val[static_cast<size_t>(n)];

    // nc rounds once from the exact product.
    WideReal nc_exact = c * WideReal(static_cast<long>(n));
    RoundResult nc = rnd.round(nc_exact, full_trace);

    RoundResult fin = fp_add(tree_total, nc.value, rnd, full_trace);
    tr.s_hat_n = fin.value;
    tr.s_n = exact_sum(x);
    tr.e_n = tr.s_hat_n - tr.s_n;

    if (full_trace) {
        tr.y_hat = yhat;
        tr.y_hat[static_cast<size_t>(n) + 1] = nc.value;
        tr.y_exact[static_cast<size_t>(n) + 1] = nc_exact;
        tr.eps[static_cast<size_t>(n) + 1] = nc.delta;
        tr.delta[static_cast<size_t>(n) + 1] = fin.delta;
        tr.t_exact = tree.exact_partial_sums(std::span<const WideReal>(tr.y_exact.data() + 1,
                                                                       static_cast<size_t>(n)));
        tr.t_exact.resize(m);
        tr.t_exact[static_cast<size_t>(n) + 1] = tr.s_n;
        tr.t_hat[static_cast<size_t>(n) + 1] = tr.s_hat_n;
    }
    return tr;
}

RunTrace compensated_sum(std::span<const WideReal> x, const FpFormat& fmt,
                         const RoundingSpec& spec, bool full_trace) {
    const int n = static_cast<int>(x.size());
    check_inputs(x, fmt);

    RunTrace tr;
    tr.algo = Algorithm::Compensated;
    tr.fmt = fmt;
    tr.rounding = spec;
    tr.n = n;
    tr.x = one_based(x);

    Rounder rnd(fmt, spec);
    const size_t m = static_cast<size_t>(n) + 1;
    if (full_trace) {
        tr.s_hat.resize(m);
        tr.s_exact.resize(m);
        tr.sigma.resize(m);
        tr.eta.resize(m);
        tr.delta.resize(m);
        tr.beta.resize(m);
        tr.c_hat.resize(m);
        tr.y_hat.resize(m);
    }

    WideReal s_prev = tr.x[1];
    WideReal c_prev(0.0);
    WideReal s_exact_k = tr.x[1];
    if (full_trace) {
        tr.s_hat[1] = s_prev;
        tr.s_exact[1] = s_exact_k;
    }
    for (int k = 2; k <= n; ++k) {
        const size_t i = static_cast<size_t>(k);
        RoundResult y = fp_sub(tr.x[i], c_prev, rnd, full_trace);
        RoundResult s = fp_add(s_prev, y.value, rnd, full_trace);
        RoundResult d = fp_sub(s.value, s_prev, rnd, full_trace);
        RoundResult cc = fp_sub(d.value, y.value, rnd, full_trace);
        if (full_trace) {
            s_exact_k += tr.x[i];
            tr.y_hat[i] = y.value;
            tr.eta[i] = y.delta;
            tr.s_hat[i] = s.value;
            tr.sigma[i] = s.delta;
            tr.delta[i] = d.delta;
            tr.c_hat[i] = cc.value;
            tr.beta[i] = cc.delta;
            tr.s_exact[i] = s_exact_k;
        }
        s_prev = s.value;
        c_prev = cc.value;
    }

    tr.s_hat_n = s_prev;
    tr.s_n = full_trace ? s_exact_k : exact_sum(x);
    tr.e_n = tr.s_hat_n - tr.s_n;
    return tr;
}

WideReal replay_compensated(std::span<const WideReal> x, const std::vector<WideReal>& sigma,
                            const std::vector<WideReal>& eta, const std::vector<WideReal>& delta,
                            const std::vector<WideReal>& beta, bool use_feedback) {
    const size_t n = x.size();
    if (n == 0) throw std::invalid_argument("need at least one input");
    auto at = [](const std::vector<WideReal>& v, size_t k) {
        return k < v.size() ? v[k] : WideReal(0.0);
    };
    const WideReal one(1.0);
    WideReal s_prev = x[0];
    WideReal c_prev(0.0);
    for (size_t k = 2; k <= n; ++k) {
        WideReal y = (x[k - 1] - c_prev) * (one + at(eta, k));
        WideReal s = (s_prev + y) * (one + at(sigma, k));
        WideReal d = (s - s_prev) * (one + at(delta, k));
        WideReal c = (d - y) * (one + at(beta, k));
        s_prev = s;
        if (use_feedback) c_prev = c;
    }
    return s_prev - exact_sum(x);
}

std::string RunTrace::to_json() const {
    nlohmann::json j;
    j["algorithm"] = algorithm_name(algo);
    j["fmt"] = fmt.name;
    j["mode"] = rounding.mode == RoundingMode::NearestEven ? "nearest" : "stochastic";
    if (rounding.mode == RoundingMode::StochasticNearness) {
        j["seed"] = rounding.seed;
        j["stream"] = rounding.stream;
    }
    j["n"] = n;
    auto hexes = [](const std::vector<WideReal>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const WideReal& w : v) a.push_back(w.hex_string());
        return a;
    };
    j["x"] = hexes(x);
    nlohmann::json series;
    auto put = [&](const char* name, const std::vector<WideReal>& v) {
        if (!v.empty()) series[name] = hexes(v);
    };
    put("s_hat", s_hat);
    put("s_exact", s_exact);
    put("delta", delta);
    put("eps", eps);
    put("y_hat", y_hat);
    put("y_exact", y_exact);
    put("t_hat", t_hat);
    put("t_exact", t_exact);
    put("sigma", sigma);
    put("eta", eta);
    put("beta", beta);
    put("c_hat", c_hat);
    j["series"] = series;  // arrays are positional: entry k is the index-k roundoff
    if (algo == Algorithm::Shifted) j["c"] = shift_c.hex_string();
    j["sum"] = s_hat_n.hex_string();
    j["exact"] = s_n.hex_string();
    j["error"] = e_n.hex_string();
    return j.dump(2);
}

}  // namespace fpsum
