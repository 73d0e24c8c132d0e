#include "mvsde/fokker_planck.hpp"

#include <doctest.h>

#include <cmath>

using namespace mvsde;

namespace {

GridFunction gaussian_density(const SpatialGrid& g, double mean, double var) {
    std::vector<double> v(g.n);
    for (int i = 0; i < g.n; ++i) {
        double z = g.node(i) - mean;
        v[i] = std::exp(-0.5 * z * z / var) / std::sqrt(2.0 * M_PI * var);
    }
    return GridFunction(g, std::move(v));
}

}  // namespace

TEST_CASE("total_mass") {
    auto g = make_uniform_grid(0, 1, 11);
    CHECK(total_mass(GridFunction(g, std::vector<double>(11, 1.0))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(total_mass(GridFunction(g, std::vector<double>(11, 0.0))) == 0.0);

    auto paper = make_uniform_grid(-10, 10, 4001);
    CHECK(total_mass(gaussian_density(paper, 0.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("density_cdf") {
    auto g = make_uniform_grid(0, 1, 101);
    auto cdf = density_cdf(GridFunction(g, std::vector<double>(101, 1.0)));
    for (int i = 0; i < g.n; ++i)
        CHECK(cdf.values[i] == doctest::Approx(g.node(i)).epsilon(1e-12));
    CHECK(cdf.values.front() == 0.0);
    CHECK(cdf.values.back() == 1.0);

    auto paper = make_uniform_grid(-10, 10, 4001);
    auto ncdf = density_cdf(gaussian_density(paper, 0.0, 1.0));
    CHECK(interp_space(ncdf, 0.0) == doctest::Approx(0.5).epsilon(1e-6));

    CHECK_THROWS_AS(density_cdf(GridFunction(g, std::vector<double>(101, 0.0))),
                    std::invalid_argument);
}

TEST_CASE("heat flow oracle: zero drift spreads N(0,1) to N(0,2)") {
    auto g = make_uniform_grid(-10, 10, 4001);
    auto rho0 = gaussian_density(g, 0.0, 1.0);
    auto bN = GridFunction::zeros(g);
    FpSolverOptions opts;
    opts.store_count = 33;
    auto [field, diag] = solve_fp(rho0, bN, NonlinearF::sine(), 1.0, opts);

    auto exact = gaussian_density(g, 0.0, 2.0);
    double sup = 0.0;
    for (int i = 0; i < g.n; ++i) {
        if (std::abs(g.node(i)) > 8.0) continue;
        sup = std::max(sup, std::abs(field.values.back()[i] - exact.values[i]));
    }
    CHECK(sup < 1e-4);

    for (double mass : diag.mass_trace) CHECK(std::abs(mass - 1.0) < 1e-6);
    CHECK(diag.min_value > -1e-6);
    CHECK(diag.accepted_steps > 0);
}

TEST_CASE("F identically zero kills the flux term") {
    auto g = make_uniform_grid(-10, 10, 801);
    auto rho0 = gaussian_density(g, 0.0, 1.0);
    std::vector<double> b(g.n);
    for (int i = 0; i < g.n; ++i) b[i] = std::sin(3.0 * g.node(i));
    GridFunction bN(g, b);

    FpSolverOptions opts;
    opts.store_count = 9;
    auto zeroF = NonlinearF::custom([](double) { return 0.0; }, 0.0, "zero");
    auto [f1, d1] = solve_fp(rho0, bN, zeroF, 0.5, opts);
    auto [f2, d2] = solve_fp(rho0, GridFunction::zeros(g), zeroF, 0.5, opts);
    CHECK(f1.values.back() == f2.values.back());
    CHECK(d1.accepted_steps == d2.accepted_steps);
}

TEST_CASE("translation equivariance of the heat flow") {
    auto g = make_uniform_grid(-10, 10, 1001);
    FpSolverOptions opts;
    opts.store_count = 5;
    auto r1 = gaussian_density(g, 0.0, 1.0);
    auto r2 = gaussian_density(g, g.dx, 1.0);
    double m1 = total_mass(r1), m2 = total_mass(r2);
    for (auto& v : r1.values) v /= m1;
    for (auto& v : r2.values) v /= m2;
    auto [f1, d1] = solve_fp(r1, GridFunction::zeros(g), NonlinearF::cosine(), 0.5, opts);
    auto [f2, d2] = solve_fp(r2, GridFunction::zeros(g), NonlinearF::cosine(), 0.5, opts);
    double sup = 0.0;
    for (int i = 0; i < g.n - 1; ++i)
        sup = std::max(sup, std::abs(f1.values.back()[i] - f2.values.back()[i + 1]));
    CHECK(sup < 1e-8);
}

TEST_CASE("solver rejects bad inputs") {
    auto g = make_uniform_grid(-10, 10, 101);
    auto rho0 = gaussian_density(g, 0.0, 1.0);
    double m = total_mass(rho0);
    for (auto& v : rho0.values) v /= m;
    auto bN = GridFunction::zeros(g);
    FpSolverOptions opts;

    CHECK_THROWS_AS(solve_fp(rho0, GridFunction::zeros(make_uniform_grid(-1, 1, 101)),
                             NonlinearF::sine(), 1.0, opts),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_fp(rho0, bN, NonlinearF::sine(), -1.0, opts), std::invalid_argument);

    auto bad_mass = GridFunction(g, std::vector<double>(101, 1.0));
    CHECK_THROWS_AS(solve_fp(bad_mass, bN, NonlinearF::sine(), 1.0, opts), std::invalid_argument);

    FpSolverOptions bad_opts;
    bad_opts.store_count = 1;
    CHECK_THROWS_AS(solve_fp(rho0, bN, NonlinearF::sine(), 1.0, bad_opts), std::invalid_argument);
}
