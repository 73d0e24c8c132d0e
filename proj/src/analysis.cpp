#include "mvsde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mvsde {

namespace {
void check_beta_lambda(double beta, double lambda) {
    if (!(beta > 0.0 && beta < 0.5)) throw std::invalid_argument("beta must be in (0, 1/2)");
    if (!(lambda > 0.0 && lambda < 0.5 - beta))
        throw std::invalid_argument("lambda must be in (0, 1/2 - beta)");
}
}  // namespace

double theoretical_kappa(double beta, double lambda) {
    check_beta_lambda(beta, lambda);
    double s = 0.5 - beta - lambda;
    return 1.0 / ((1.0 + beta) + 2.0 * s * s);
}

double theoretical_rate(double beta, double lambda) {
    return 0.5 - 0.5 * (1.0 + beta) * theoretical_kappa(beta, lambda);
}

double rate_limit(double beta) {
    if (!(beta > 0.0 && beta < 0.5)) throw std::invalid_argument("beta must be in (0, 1/2)");
    double s = 0.5 - beta;
    return 0.5 - 0.5 * (1.0 + beta) / ((1.0 + beta) + 2.0 * s * s);
}

double RatePlan::N_of_m(int m) const { return std::round(std::pow(static_cast<double>(m), kappa)); }

double strong_error(const LevelResult& level, const LevelResult& reference) {
    if (level.terminal.size() != reference.terminal.size())
        throw std::invalid_argument("strong_error: mismatched path counts");
    double s = 0.0;
    for (std::size_t i = 0; i < level.terminal.size(); ++i)
        s += std::abs(level.terminal[i] - reference.terminal[i]);
    return s / static_cast<double>(level.terminal.size());
}

RateReport fit_rate(std::vector<std::pair<int, double>> points) {
    if (points.size() < 2) throw std::invalid_argument("fit_rate: need at least 2 points");
    std::sort(points.begin(), points.end());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].second > 0.0)) throw std::invalid_argument("fit_rate: errors must be positive");
        if (i > 0 && points[i].first == points[i - 1].first)
            throw std::invalid_argument("fit_rate: step counts must be distinct");
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(points.size());
    for (const auto& [m, err] : points) {
        double x = std::log10(static_cast<double>(m));
        double y = std::log10(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    RateReport report;
    report.points = std::move(points);
    report.slope = -slope;
    report.intercept = (sy - slope * sx) / n;
    return report;
}

KsResult ks_test(std::vector<double> samples, const GridFunction& cdf) {
    const int n = static_cast<int>(samples.size());
    if (n < 8) throw std::invalid_argument("ks_test: need at least 8 samples");
    std::sort(samples.begin(), samples.end());

    auto F = [&](double x) {
        if (x < cdf.grid.lo) return 0.0;
        if (x > cdf.grid.hi) return 1.0;
        return std::clamp(interp_space(cdf, x), 0.0, 1.0);
    };

    double D = 0.0;
    for (int i = 0; i < n; ++i) {
        double Fx = F(samples[i]);
        double upper = static_cast<double>(i + 1) / n - Fx;
        double lower = Fx - static_cast<double>(i) / n;
        D = std::max({D, upper, lower});
    }

    // asymptotic Kolmogorov distribution with the Stephens correction
    double sn = std::sqrt(static_cast<double>(n));
    double lam = (sn + 0.12 + 0.11 / sn) * D;
    double p = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 1000; ++k) {
        double term = std::exp(-2.0 * k * k * lam * lam);
        p += sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    p = std::clamp(2.0 * p, 0.0, 1.0);
    return {D, p, n};
}

double hurst_estimate(const FbmPath& path) {
    if (path.n < 1024) throw std::invalid_argument("hurst_estimate: path too short");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int lag = 1; lag <= 32; lag *= 2) {
        double mean = 0.0;
        int k = path.n - lag;
        for (int i = 0; i < k; ++i) mean += path.values[i + lag] - path.values[i];
        mean /= k;
        double var = 0.0;
        for (int i = 0; i < k; ++i) {
            double d = path.values[i + lag] - path.values[i] - mean;
            var += d * d;
        }
        var /= (k - 1);
        // deterministic inputs give variance at rounding level relative to the mean
        if (!(var > 1e-24 * mean * mean + 1e-300))
            throw std::invalid_argument("hurst_estimate: degenerate increments");
        double x = std::log(lag * path.dt);
        double y = std::log(var);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return slope / 2.0;
}

}  // namespace mvsde
