#pragma once

#include "mvsde/analysis.hpp"
#include "mvsde/config.hpp"
#include "mvsde/euler.hpp"
#include "mvsde/mollifier.hpp"

#include <map>
#include <string>

namespace mvsde {

// One fully prepared resolution level: smoothed drift, its Fokker-Planck
// solution and the assembled drift evaluator.
struct LevelDrift {
    double N = 0.0;
    GridFunction bN;
    SpaceTimeField field;
    FpDiagnostics diag;

    DriftEvaluator evaluator(const NonlinearF& F) const { return {&field, &bN, &F}; }
};

SpatialGrid main_grid(const ExperimentConfig& cfg);

// Standard normal density sampled on the grid (the initial law).
GridFunction initial_density(const SpatialGrid& grid);

// fBm path for the rough drift, sampled on the grid extended by the widest
// kernel radius needed for smoothing parameter N_min. run_index selects the
// drift stream when fixed_drift is off.
GridFunction generate_h(const ExperimentConfig& cfg, double N_min, int run_index);

// Mollifies h at smoothing parameter N and solves the regularised
// Fokker-Planck equation for the law density.
LevelDrift build_level(const ExperimentConfig& cfg, const GridFunction& h, double N,
                       const NonlinearF& F);

struct DriftGenResult {
    GridFunction h;                       // restricted to the main grid
    std::map<double, GridFunction> bN;    // keyed by N
};

DriftGenResult run_drift_gen(const ExperimentConfig& cfg, const std::string& out_dir);

struct DensityCompareResult {
    GridFunction rho_T;
    FpDiagnostics diag;
    LevelResult terminal;
    KsResult ks;
};

DensityCompareResult run_density_compare(const ExperimentConfig& cfg, const std::string& out_dir);

struct RateSweepResult {
    std::vector<RateReport> runs;
    double mean_rate = 0.0;
    double half_width_95 = 0.0;  // normal-approximation 95% half-width across runs
    double theoretical_rate = 0.0;
    double rate_limit = 0.0;
    bool degenerate = false;  // errors at machine level, slope not meaningful
};

RateSweepResult run_rate_sweep(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace mvsde
