#include "mvsde/euler.hpp"

#include <cmath>
#include <span>
#include <stdexcept>

namespace mvsde {

namespace {

// Euler iteration in the form X_i = x0 + W_{t_i} + D_i with the drift
// accumulated separately: D_{i+1} = D_i + B(t_i, X_i) dt. This is an exact
// rearrangement of the textbook recursion, and it makes coupled levels that
// share the prefix-summed path agree bitwise whenever the drift vanishes.
double euler_path_on_prefix(double x0, const DriftEvaluator& d, std::span<const double> Wpath,
                            int stride, double T, double* max_drift = nullptr) {
    const int m = (static_cast<int>(Wpath.size()) - 1) / stride;
    const double dt = T / m;
    double drift_acc = 0.0;
    for (int i = 0; i < m; ++i) {
        double t = i * dt;
        double x = x0 + Wpath[static_cast<std::size_t>(i) * stride] + drift_acc;
        if (!std::isfinite(x))
            throw std::runtime_error("euler_path: non-finite state at step " + std::to_string(i));
        double b = drift_eval(d, t, x);
        if (max_drift && std::abs(b) > *max_drift) *max_drift = std::abs(b);
        drift_acc += b * dt;
    }
    if (drift_acc == 0.0) return x0 + Wpath.back();
    return x0 + Wpath.back() + drift_acc;
}

std::vector<double> prefix_path(const std::vector<double>& dW) {
    std::vector<double> W(dW.size() + 1);
    W[0] = 0.0;
    for (std::size_t i = 0; i < dW.size(); ++i) W[i + 1] = W[i] + dW[i];
    return W;
}

}  // namespace

double euler_path(double x0, const DriftEvaluator& d, const BrownianIncrements& w) {
    return euler_path_on_prefix(x0, d, prefix_path(w.dW), 1, w.T);
}

namespace {

EnsembleResult run_ensemble(const EnsembleOptions& opts,
                            const std::map<int, DriftEvaluator>& level_drifts,
                            const DriftEvaluator& ref_drift,
                            const std::map<int, double>& level_N, double ref_N, bool parallel) {
    if (opts.n_paths < 1) throw std::invalid_argument("simulate_ensemble: n_paths must be >= 1");
    if (opts.m_ref < 1) throw std::invalid_argument("simulate_ensemble: m_ref must be >= 1");
    for (const auto& [m, d] : level_drifts) {
        if (m < 1 || opts.m_ref % m != 0)
            throw std::invalid_argument("simulate_ensemble: level m = " + std::to_string(m) +
                                        " must divide m_ref");
        (void)d;
    }

    EnsembleResult result;
    result.x0.resize(opts.n_paths);
    result.reference.m = opts.m_ref;
    result.reference.N = ref_N;
    result.reference.terminal.resize(opts.n_paths);
    for (const auto& [m, d] : level_drifts) {
        (void)d;
        LevelResult lr;
        lr.m = m;
        auto it = level_N.find(m);
        lr.N = it == level_N.end() ? 0.0 : it->second;
        lr.terminal.resize(opts.n_paths);
        result.levels.push_back(std::move(lr));
    }

    std::string failure;
#pragma omp parallel for schedule(static) if (parallel)
    for (int p = 0; p < opts.n_paths; ++p) {
        try {
            RngStream rng(SeedSpec{opts.seed.master_seed,
                                   opts.seed.stream_id + static_cast<std::uint64_t>(p)});
            double x0 = rng.next_normal();
            std::vector<double> W(opts.m_ref + 1);
            W[0] = 0.0;
            const double scale = std::sqrt(opts.T / opts.m_ref);
            for (int i = 0; i < opts.m_ref; ++i) W[i + 1] = W[i] + scale * rng.next_normal();

            result.x0[p] = x0;
            double local_max = 0.0;
            result.reference.terminal[p] =
                euler_path_on_prefix(x0, ref_drift, W, 1, opts.T, &local_max);
            int li = 0;
            for (const auto& [m, drift] : level_drifts) {
                result.levels[li].terminal[p] =
                    euler_path_on_prefix(x0, drift, W, opts.m_ref / m, opts.T, &local_max);
                ++li;
            }
#pragma omp critical
            if (local_max > result.max_drift_abs) result.max_drift_abs = local_max;
        } catch (const std::exception& e) {
#pragma omp critical
            if (failure.empty()) failure = "path " + std::to_string(p) + ": " + e.what();
        }
    }
    if (!failure.empty()) throw std::runtime_error("simulate_ensemble: " + failure);
    return result;
}

}  // namespace

EnsembleResult simulate_ensemble(const EnsembleOptions& opts,
                                 const std::map<int, DriftEvaluator>& level_drifts,
                                 const DriftEvaluator& ref_drift,
                                 const std::map<int, double>& level_N, double ref_N) {
    return run_ensemble(opts, level_drifts, ref_drift, level_N, ref_N, true);
}

EnsembleResult simulate_ensemble_serial(const EnsembleOptions& opts,
                                        const std::map<int, DriftEvaluator>& level_drifts,
                                        const DriftEvaluator& ref_drift,
                                        const std::map<int, double>& level_N, double ref_N) {
    return run_ensemble(opts, level_drifts, ref_drift, level_N, ref_N, false);
}

}  // namespace mvsde
