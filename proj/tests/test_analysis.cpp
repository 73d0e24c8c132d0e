#include "mvsde/analysis.hpp"
#include "mvsde/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace mvsde;

TEST_CASE("theoretical_kappa closed form") {
    CHECK(theoretical_kappa(1e-9, 1e-9) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK(theoretical_kappa(0.25, 0.01) == doctest::Approx(1.0 / 1.3652).epsilon(1e-9));
    for (double beta : {0.05, 0.2, 0.35, 0.49})
        for (double lam : {0.001, 0.004, 0.008})
            CHECK(theoretical_kappa(beta, lam) < 1.0 / (1.0 + beta));
    CHECK_THROWS_AS(theoretical_kappa(0.6, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(theoretical_kappa(0.3, 0.3), std::invalid_argument);
}

TEST_CASE("theoretical_rate limits and monotonicity") {
    CHECK(theoretical_rate(1e-6, 1e-9) == doctest::Approx(1.0 / 6.0).epsilon(1e-5));
    CHECK(theoretical_rate(0.5 - 1e-6, 1e-9) == doctest::Approx(0.0).scale(1).epsilon(1e-5));

    double prev = 1.0;
    for (double lam = 0.01; lam < 0.2; lam += 0.01) {
        double r = theoretical_rate(0.3, lam);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("rate_limit dominates theoretical_rate and stays below 1/6") {
    CHECK(rate_limit(1e-9) == doctest::Approx(1.0 / 6.0).epsilon(1e-7));
    CHECK(rate_limit(0.5 - 1e-9) == doctest::Approx(0.0).scale(1).epsilon(1e-7));
    for (double beta : {0.01, 0.125, 0.25, 0.375, 0.49}) {
        CHECK(rate_limit(beta) < 1.0 / 6.0);
        for (double lam : {0.001, 0.005, 0.009})
            CHECK(rate_limit(beta) > theoretical_rate(beta, lam));
    }
}

TEST_CASE("kappa increases in lambda") {
    for (double beta : {0.1, 0.3}) {
        double prev = 0.0;
        for (double lam = 0.005; lam < 0.5 - beta; lam += 0.005) {
            double k = theoretical_kappa(beta, lam);
            CHECK(k > prev);
            prev = k;
        }
    }
}

TEST_CASE("strong_error basics") {
    LevelResult a{128, 4.0, {1.0, 2.0, 3.0}};
    LevelResult ref{2048, 16.0, {1.0, 2.0, 3.0}};
    CHECK(strong_error(a, ref) == 0.0);

    LevelResult b{128, 4.0, {1.5, 2.5, 3.5}};
    CHECK(strong_error(b, ref) == doctest::Approx(0.5).epsilon(1e-15));

    LevelResult bad{128, 4.0, {1.0}};
    CHECK_THROWS_AS(strong_error(bad, ref), std::invalid_argument);
}

TEST_CASE("fit_rate on synthetic power laws") {
    auto r1 = fit_rate({{10, 1e-1}, {100, 1e-2}});
    CHECK(r1.slope == doctest::Approx(1.0).epsilon(1e-12));

    auto r0 = fit_rate({{16, 0.3}, {64, 0.3}, {256, 0.3}});
    CHECK(r0.slope == doctest::Approx(0.0).scale(1).epsilon(1e-12));

    std::vector<std::pair<int, double>> pts;
    for (int m : {128, 256, 512}) pts.emplace_back(m, 5.0 * std::pow(m, -1.0 / 6.0));
    CHECK(fit_rate(pts).slope == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    // scale invariance of the fitted exponent
    for (auto& [m, e] : pts) e *= 123.456;
    CHECK(fit_rate(pts).slope == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    CHECK_THROWS_AS(fit_rate({{10, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_rate({{10, 1.0}, {10, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_rate({{10, -1.0}, {20, 1.0}}), std::invalid_argument);
}

namespace {
GridFunction normal_cdf_grid(double var = 1.0) {
    auto g = make_uniform_grid(-10, 10, 4001);
    std::vector<double> v(g.n);
    for (int i = 0; i < g.n; ++i) v[i] = 0.5 * std::erfc(-g.node(i) / std::sqrt(2.0 * var));
    return GridFunction(g, v);
}
}  // namespace

TEST_CASE("ks_test quantile stairs give D = 1/(2n)") {
    auto g = make_uniform_grid(0, 1, 1001);
    std::vector<double> cdfv(g.n);
    for (int i = 0; i < g.n; ++i) cdfv[i] = g.node(i);
    GridFunction cdf(g, cdfv);

    const int n = 50;
    std::vector<double> samples(n);
    for (int i = 0; i < n; ++i) samples[i] = (i + 0.5) / n;  // exact quantiles
    auto ks = ks_test(samples, cdf);
    CHECK(ks.statistic == doctest::Approx(0.5 / n).epsilon(1e-10));
}

TEST_CASE("ks_test total mismatch") {
    auto cdf = normal_cdf_grid();
    std::vector<double> samples(16, -1000.0);
    auto ks = ks_test(samples, cdf);
    CHECK(ks.statistic == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ks.p_value < 1e-6);
}

TEST_CASE("ks_test self-consistency on exact normal samples") {
    auto samples = sample_initial({777, 0}, 10000);
    auto ks = ks_test(samples, normal_cdf_grid());
    CHECK(ks.p_value > 0.05);
    CHECK(ks.statistic < 0.02);
}

TEST_CASE("ks statistic is invariant under affine reparameterization") {
    auto samples = sample_initial({12, 4}, 500);
    auto ks1 = ks_test(samples, normal_cdf_grid());

    const double a = 2.5, b = -1.0;
    auto g = make_uniform_grid(-10 * a + b, 10 * a + b, 4001);
    std::vector<double> v(g.n);
    for (int i = 0; i < g.n; ++i)
        v[i] = 0.5 * std::erfc(-((g.node(i) - b) / a) / std::sqrt(2.0));
    std::vector<double> mapped(samples);
    for (auto& x : mapped) x = a * x + b;
    auto ks2 = ks_test(mapped, GridFunction(g, v));
    CHECK(ks2.statistic == doctest::Approx(ks1.statistic).epsilon(1e-6));
}

TEST_CASE("ks_test rejects tiny samples") {
    std::vector<double> s(4, 0.0);
    CHECK_THROWS_AS(ks_test(s, normal_cdf_grid()), std::invalid_argument);
}

TEST_CASE("p-value series truncation is stable") {
    // truncating at term < 1e-12 versus a long sum changes p by < 1e-10
    auto p_of = [](double lam, int terms) {
        double p = 0.0, sign = 1.0;
        for (int k = 1; k <= terms; ++k) {
            p += sign * std::exp(-2.0 * k * k * lam * lam);
            sign = -sign;
        }
        return 2.0 * p;
    };
    for (double lam : {0.5, 1.0, 1.5}) {
        double p100 = p_of(lam, 100);
        double ptrunc = 0.0, sign = 1.0;
        for (int k = 1; k <= 100; ++k) {
            double term = std::exp(-2.0 * k * k * lam * lam);
            ptrunc += sign * term;
            sign = -sign;
            if (term < 1e-12) break;
        }
        CHECK(std::abs(2.0 * ptrunc - p100) < 1e-10);
    }
}

TEST_CASE("hurst_estimate rejects degenerate input") {
    FbmPath line;
    line.H = 0.75;
    line.n = 1 << 12;
    line.dt = 1e-3;
    line.values.resize(line.n);
    for (int i = 0; i < line.n; ++i) line.values[i] = i * line.dt;
    CHECK_THROWS_AS(hurst_estimate(line), std::invalid_argument);

    FbmPath tiny;
    tiny.n = 100;
    tiny.values.assign(100, 0.0);
    CHECK_THROWS_AS(hurst_estimate(tiny), std::invalid_argument);
}

TEST_CASE("hurst_estimate on a Brownian-style path") {
    // H = 1/2 synthetic generator, allowed in tests only
    FbmPath p;
    p.H = 0.5;
    p.n = 1 << 14;
    p.dt = 1.0 / p.n;
    p.values.resize(p.n);
    p.values[0] = 0.0;
    RngStream rng({2718, 0});
    double scale = std::sqrt(p.dt);
    for (int i = 1; i < p.n; ++i) p.values[i] = p.values[i - 1] + scale * rng.next_normal();
    CHECK(hurst_estimate(p) == doctest::Approx(0.5).epsilon(0.1));
}
