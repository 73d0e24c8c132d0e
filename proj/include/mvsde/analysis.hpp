#pragma once

#include "mvsde/euler.hpp"
#include "mvsde/fbm.hpp"
#include "mvsde/grid.hpp"

#include <utility>
#include <vector>

namespace mvsde {

// Smoothing/step-size coupling N(m) = m^kappa and the associated strong
// convergence rate, parameterized by the drift roughness beta in (0, 1/2)
// and a slack lambda in (0, 1/2 - beta).
double theoretical_kappa(double beta, double lambda);

// positive rate r: strong error decays like m^{-r}
double theoretical_rate(double beta, double lambda);

// supremum of theoretical_rate over lambda (the lambda -> 0 limit)
double rate_limit(double beta);

struct RatePlan {
    double beta = 0.0;
    double lambda = 0.0;
    double kappa = 0.0;
    double rate = 0.0;

    static RatePlan make(double beta, double lambda) {
        return {beta, lambda, theoretical_kappa(beta, lambda), theoretical_rate(beta, lambda)};
    }
    double N_of_m(int m) const;
};

// Mean over coupled paths of |terminal_level - terminal_ref|.
double strong_error(const LevelResult& level, const LevelResult& reference);

struct RateReport {
    std::vector<std::pair<int, double>> points;  // (m, strong error)
    double slope = 0.0;                          // empirical rate, sign-flipped
    double intercept = 0.0;
    double theoretical_rate = 0.0;
};

// OLS of log10(error) on log10(m); slope sign-flipped so that rate 0.3
// means error ~ m^{-0.3}.
RateReport fit_rate(std::vector<std::pair<int, double>> points);

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
    int n = 0;
};

// One-sample Kolmogorov-Smirnov test of samples against a cdf given as a
// GridFunction (0 left of the grid, 1 right of it). Asymptotic p-value with
// the Stephens finite-n correction.
KsResult ks_test(std::vector<double> samples, const GridFunction& cdf);

// Slope/2 of the log-log regression of lag-k increment variances over
// lags {1, 2, 4, ..., 32}; estimates the Hurst index of a sampled path.
double hurst_estimate(const FbmPath& path);

}  // namespace mvsde
