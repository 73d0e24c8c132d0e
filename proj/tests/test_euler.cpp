#include "mvsde/euler.hpp"
#include "mvsde/analysis.hpp"

#include <doctest.h>

#include <cmath>

using namespace mvsde;

namespace {

// field/drift fixtures on [-10, 10]
struct Fixture {
    SpatialGrid grid = make_uniform_grid(-10, 10, 401);
    SpaceTimeField field;
    GridFunction bN = GridFunction::zeros(grid);

    Fixture() {
        field.grid = grid;
        field.times = {0.0, 1.0};
        field.values.assign(2, std::vector<double>(grid.n, 0.0));
    }
    void set_field(double c) {
        for (auto& row : field.values)
            for (auto& v : row) v = c;
    }
    void set_bN(auto fn) {
        for (int i = 0; i < grid.n; ++i) bN.values[i] = fn(grid.node(i));
    }
};

}  // namespace

TEST_CASE("drift_eval composes F, field and bN") {
    Fixture fx;
    NonlinearF sinF = NonlinearF::sine();
    DriftEvaluator d{&fx.field, &fx.bN, &sinF};

    fx.set_bN([](double x) { return std::cos(x); });
    // rho == 0 and F = sin: drift vanishes everywhere
    CHECK(drift_eval(d, 0.3, 1.7) == 0.0);
    CHECK(drift_eval(d, 0.0, -4.2) == 0.0);

    NonlinearF cosF = NonlinearF::cosine();
    DriftEvaluator dc{&fx.field, &fx.bN, &cosF};
    // rho == 0 and F = cos: drift equals bN exactly
    for (double x : {-3.0, -0.41, 0.0, 2.77})
        CHECK(drift_eval(dc, 0.5, x) == interp_space(fx.bN, x));

    // outside the grid the zero extension wins for any F
    CHECK(drift_eval(dc, 0.5, 11.0) == 0.0);
    CHECK(drift_eval(dc, 0.5, -10.5) == 0.0);
}

TEST_CASE("euler_path pure noise is the exact prefix sum") {
    Fixture fx;
    NonlinearF sinF = NonlinearF::sine();
    DriftEvaluator d{&fx.field, &fx.bN, &sinF};  // drift identically 0

    auto w = brownian_increments({3, 9}, 128, 1.0);
    double sum = 0.0;  // left-to-right
    for (double dw : w.dW) sum += dw;
    CHECK(euler_path(0.7, d, w) == 0.7 + sum);
}

TEST_CASE("euler_path constant drift") {
    Fixture fx;
    fx.set_bN([](double) { return 1.0; });
    fx.set_field(0.0);
    NonlinearF constF = NonlinearF::custom([](double) { return 2.5; }, 2.5, "const");
    DriftEvaluator d{&fx.field, &fx.bN, &constF};  // B == 2.5 inside the grid

    auto w = brownian_increments({3, 10}, 64, 1.0);
    // keep the path well inside the domain so the drift really is constant
    double sumw = 0.0;
    for (double dw : w.dW) sumw += dw;
    CHECK(euler_path(0.0, d, w) == doctest::Approx(2.5 * 1.0 + sumw).epsilon(1e-12));
}

TEST_CASE("OU self-convergence: empirical strong order near 1") {
    // B(t,x) = -x via F = custom identity-free route: F(rho)=1, bN = -x
    Fixture fx;
    fx.set_bN([](double x) { return -x; });
    NonlinearF oneF = NonlinearF::custom([](double) { return 1.0; }, 1.0, "one");
    DriftEvaluator d{&fx.field, &fx.bN, &oneF};

    EnsembleOptions opts;
    opts.seed = {2024, 0};
    opts.n_paths = 10000;
    opts.m_ref = 2048;
    std::map<int, DriftEvaluator> levels;
    for (int m : {32, 64, 128, 256, 512}) levels[m] = d;

    auto ens = simulate_ensemble(opts, levels, d);
    std::vector<std::pair<int, double>> points;
    for (const auto& lvl : ens.levels) points.emplace_back(lvl.m, strong_error(lvl, ens.reference));
    auto report = fit_rate(points);
    CHECK(report.slope > 0.8);
    CHECK(report.slope < 1.2);
}

TEST_CASE("coupling exactness") {
    Fixture fx;
    fx.set_bN([](double x) { return std::sin(2 * x); });
    std::vector<double> rho(fx.grid.n);
    for (int i = 0; i < fx.grid.n; ++i) rho[i] = std::exp(-0.1 * fx.grid.node(i) * fx.grid.node(i));
    fx.field.values = {rho, rho};
    NonlinearF sinF = NonlinearF::sine();
    DriftEvaluator d{&fx.field, &fx.bN, &sinF};

    EnsembleOptions opts;
    opts.seed = {5, 0};
    opts.n_paths = 500;
    opts.m_ref = 256;
    std::map<int, DriftEvaluator> levels{{256, d}};

    auto ens = simulate_ensemble(opts, levels, d);
    // identical drift and m = m_ref: bitwise equal to the reference
    CHECK(ens.levels[0].terminal == ens.reference.terminal);
    CHECK(strong_error(ens.levels[0], ens.reference) == 0.0);
}

TEST_CASE("zero drift couples exactly at every level") {
    Fixture fx;  // zero field, zero bN
    NonlinearF sinF = NonlinearF::sine();
    DriftEvaluator d{&fx.field, &fx.bN, &sinF};

    EnsembleOptions opts;
    opts.seed = {17, 0};
    opts.n_paths = 1000;
    opts.m_ref = 512;
    std::map<int, DriftEvaluator> levels{{32, d}, {64, d}, {128, d}};

    auto ens = simulate_ensemble(opts, levels, d);
    for (const auto& lvl : ens.levels) CHECK(strong_error(lvl, ens.reference) == 0.0);
    CHECK(ens.max_drift_abs == 0.0);
}

TEST_CASE("ensemble determinism and serial/parallel equivalence") {
    Fixture fx;
    fx.set_bN([](double x) { return std::cos(x); });
    fx.set_field(0.5);
    NonlinearF sinF = NonlinearF::sine();
    DriftEvaluator d{&fx.field, &fx.bN, &sinF};

    EnsembleOptions opts;
    opts.seed = {99, 0};
    opts.n_paths = 2000;
    opts.m_ref = 128;
    std::map<int, DriftEvaluator> levels{{32, d}};

    auto a = simulate_ensemble(opts, levels, d);
    auto b = simulate_ensemble(opts, levels, d);
    auto s = simulate_ensemble_serial(opts, levels, d);
    CHECK(a.reference.terminal == b.reference.terminal);
    CHECK(a.levels[0].terminal == b.levels[0].terminal);
    CHECK(a.reference.terminal == s.reference.terminal);
    CHECK(a.levels[0].terminal == s.levels[0].terminal);
    CHECK(a.x0 == s.x0);
    CHECK(a.max_drift_abs == s.max_drift_abs);

    // drift bound diagnostic: |B| <= sup|F| * max|bN|
    double max_b = 0.0;
    for (double v : fx.bN.values) max_b = std::max(max_b, std::abs(v));
    CHECK(a.max_drift_abs <= sinF.sup_abs() * max_b + 1e-15);
}

TEST_CASE("zero-drift terminal law is N(0, 1 + T)") {
    Fixture fx;
    NonlinearF sinF = NonlinearF::sine();
    DriftEvaluator d{&fx.field, &fx.bN, &sinF};

    EnsembleOptions opts;
    opts.seed = {41, 0};
    opts.n_paths = 10000;
    opts.m_ref = 64;
    auto ens = simulate_ensemble(opts, {}, d);

    auto g = make_uniform_grid(-10, 10, 4001);
    std::vector<double> cdfv(g.n);
    for (int i = 0; i < g.n; ++i)
        cdfv[i] = 0.5 * std::erfc(-g.node(i) / std::sqrt(2.0 * 2.0));
    auto ks = ks_test(ens.reference.terminal, GridFunction(g, cdfv));
    CHECK(ks.p_value > 0.01);
}

TEST_CASE("ensemble rejects invalid levels") {
    Fixture fx;
    NonlinearF sinF = NonlinearF::sine();
    DriftEvaluator d{&fx.field, &fx.bN, &sinF};
    EnsembleOptions opts;
    opts.n_paths = 4;
    opts.m_ref = 100;
    std::map<int, DriftEvaluator> bad{{33, d}};
    CHECK_THROWS_AS(simulate_ensemble(opts, bad, d), std::invalid_argument);
}
