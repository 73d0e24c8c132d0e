#pragma once

#include "mvsde/fokker_planck.hpp"
#include "mvsde/rng.hpp"

#include <map>

namespace mvsde {

// Assembled drift B^N(t,x) = F(rho_hat(t,x)) * b^N(x). Total on
// [0,T] x R: both factors extend by zero outside the grid.
struct DriftEvaluator {
    const SpaceTimeField* field = nullptr;
    const GridFunction* bN = nullptr;
    const NonlinearF* F = nullptr;

    double horizon() const { return field->horizon(); }
};

inline double drift_eval(const DriftEvaluator& d, double t, double x) {
    double bx = interp_space(*d.bN, x);
    if (bx == 0.0) return 0.0;
    return (*d.F)(interp_spacetime(*d.field, t, x)) * bx;
}

// Euler-Maruyama along one Brownian path; returns X at t = T.
double euler_path(double x0, const DriftEvaluator& d, const BrownianIncrements& w);

struct LevelResult {
    int m = 0;
    double N = 0.0;
    std::vector<double> terminal;
};

struct EnsembleOptions {
    SeedSpec seed;          // stream_id is the path index
    int n_paths = 10000;
    int m_ref = 2048;
    double T = 1.0;
};

struct EnsembleResult {
    std::vector<LevelResult> levels;
    LevelResult reference;
    // per-path initial conditions, shared by all levels
    std::vector<double> x0;
    // largest |B^N| seen at any evaluated (t,x); bounded by sup|F| * max|bN|
    double max_drift_abs = 0.0;
};

// Runs reference and all coarse levels off the same per-path Brownian path:
// each path draws x0 then m_ref fine increments from stream (seed, path);
// coarse levels consume block sums of the same increments. Levels are keyed
// by step count m (each must divide m_ref). Parallel over paths.
EnsembleResult simulate_ensemble(const EnsembleOptions& opts,
                                 const std::map<int, DriftEvaluator>& level_drifts,
                                 const DriftEvaluator& ref_drift,
                                 const std::map<int, double>& level_N = {}, double ref_N = 0.0);

// Serial reference implementation; output bitwise equal to the parallel one.
EnsembleResult simulate_ensemble_serial(const EnsembleOptions& opts,
                                        const std::map<int, DriftEvaluator>& level_drifts,
                                        const DriftEvaluator& ref_drift,
                                        const std::map<int, double>& level_N = {},
                                        double ref_N = 0.0);

}  // namespace mvsde
