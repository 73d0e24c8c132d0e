#include "mvsde/fokker_planck.hpp"

#include <cmath>
#include <stdexcept>

namespace mvsde {

namespace {

// Dormand-Prince 5(4) coefficients
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// error weights: 5th-order minus embedded 4th-order solution
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

class FpRhs {
public:
    FpRhs(const std::vector<double>& bN, const NonlinearF& F, double dx)
        : bN_(bN), F_(F), inv_dx2_(1.0 / (dx * dx)), inv_2dx_(0.5 / dx) {}

    void operator()(const std::vector<double>& rho, std::vector<double>& drho) const {
        const int n = static_cast<int>(rho.size());
        drho[0] = 0.0;
        drho[n - 1] = 0.0;
        for (int i = 1; i < n - 1; ++i) {
            double lap = 0.5 * (rho[i - 1] - 2.0 * rho[i] + rho[i + 1]) * inv_dx2_;
            double gp = F_.tilde(rho[i + 1]) * bN_[i + 1];
            double gm = F_.tilde(rho[i - 1]) * bN_[i - 1];
            drho[i] = lap - (gp - gm) * inv_2dx_;
        }
    }

private:
    const std::vector<double>& bN_;
    const NonlinearF& F_;
    double inv_dx2_, inv_2dx_;
};

}  // namespace

std::pair<SpaceTimeField, FpDiagnostics> solve_fp(const GridFunction& rho0,
                                                  const GridFunction& bN, const NonlinearF& F,
                                                  double T, const FpSolverOptions& opts) {
    if (!(rho0.grid == bN.grid))
        throw std::invalid_argument("solve_fp: rho0 and bN must share the same grid");
    if (!(T > 0.0)) throw std::invalid_argument("solve_fp: T must be > 0");
    if (!(opts.abs_tol > 0.0 && opts.rel_tol > 0.0))
        throw std::invalid_argument("solve_fp: tolerances must be > 0");
    if (opts.store_count < 2) throw std::invalid_argument("solve_fp: store_count must be >= 2");
    {
        double m0 = total_mass(rho0);
        if (std::abs(m0 - 1.0) > 1e-3)
            throw std::invalid_argument("solve_fp: rho0 mass deviates from 1 by more than 1e-3");
        for (double v : rho0.values)
            if (v < 0.0) throw std::invalid_argument("solve_fp: rho0 must be nonnegative");
    }

    const int n = rho0.grid.n;
    const FpRhs rhs(bN.values, F, rho0.grid.dx);

    SpaceTimeField field;
    field.grid = rho0.grid;
    field.times.resize(opts.store_count);
    for (int k = 0; k < opts.store_count; ++k)
        field.times[k] = T * static_cast<double>(k) / (opts.store_count - 1);
    field.times.back() = T;
    field.values.reserve(opts.store_count);
    field.values.push_back(rho0.values);

    FpDiagnostics diag;
    diag.mass_trace.reserve(opts.store_count);
    diag.mass_trace.push_back(total_mass(rho0));
    diag.min_value = *std::min_element(rho0.values.begin(), rho0.values.end());

    std::vector<double> y = rho0.values;
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y5(n);

    rhs(y, k1);  // FSAL: k1 of the next step reuses k7 of the accepted one

    double t = 0.0;
    double h = field.times[1] / 16.0;  // initial guess, controller adapts fast
    const double h_min_factor = 1e-14;
    double err_prev = 1.0;

    for (int slice = 1; slice < opts.store_count; ++slice) {
        const double t_out = field.times[slice];
        while (t < t_out) {
            bool landing = false;
            double h_try = h;
            if (opts.max_step > 0.0 && h_try > opts.max_step) h_try = opts.max_step;
            if (t + h_try >= t_out) {
                h_try = t_out - t;
                landing = true;
            }
            if (h_try < h_min_factor * T)
                throw std::runtime_error("solve_fp: step size underflow at t = " + std::to_string(t));

            for (int i = 0; i < n; ++i) ytmp[i] = y[i] + h_try * a21 * k1[i];
            rhs(ytmp, k2);
            for (int i = 0; i < n; ++i) ytmp[i] = y[i] + h_try * (a31 * k1[i] + a32 * k2[i]);
            rhs(ytmp, k3);
            for (int i = 0; i < n; ++i)
                ytmp[i] = y[i] + h_try * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            rhs(ytmp, k4);
            for (int i = 0; i < n; ++i)
                ytmp[i] = y[i] + h_try * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            rhs(ytmp, k5);
            for (int i = 0; i < n; ++i)
                ytmp[i] = y[i] + h_try * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                          a65 * k5[i]);
            rhs(ytmp, k6);
            for (int i = 0; i < n; ++i)
                y5[i] = y[i] +
                        h_try * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            rhs(y5, k7);

            // scaled RMS error of the embedded pair
            double err_sq = 0.0;
            bool finite = true;
            for (int i = 0; i < n; ++i) {
                double ei = h_try * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                     e6 * k6[i] + e7 * k7[i]);
                double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
                double r = ei / sc;
                err_sq += r * r;
                if (!std::isfinite(y5[i])) finite = false;
            }
            if (!finite)
                throw std::runtime_error("solve_fp: non-finite state at t = " + std::to_string(t));
            double err = std::sqrt(err_sq / n);

            if (err <= 1.0) {
                t = landing ? t_out : t + h_try;
                y.swap(y5);
                k1.swap(k7);
                ++diag.accepted_steps;
                // PI step controller (Gustafsson), exponents for a 5(4) pair
                double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) *
                             std::pow(std::max(err_prev, 1e-10), 0.4 / 5.0);
                fac = std::min(5.0, std::max(0.2, fac));
                h = h_try * fac;
                err_prev = std::max(err, 1e-10);
            } else {
                ++diag.rejected_steps;
                double fac = std::max(0.2, 0.9 * std::pow(err, -1.0 / 5.0));
                h = h_try * fac;
            }
        }
        field.values.push_back(y);
        diag.mass_trace.push_back(total_mass(GridFunction(field.grid, y)));
        double mn = *std::min_element(y.begin(), y.end());
        if (mn < diag.min_value) diag.min_value = mn;
    }
    return {std::move(field), std::move(diag)};
}

double total_mass(const GridFunction& f) {
    const int n = f.grid.n;
    double s = 0.5 * (f.values[0] + f.values[n - 1]);
    for (int i = 1; i < n - 1; ++i) s += f.values[i];
    return s * f.grid.dx;
}

GridFunction density_cdf(const GridFunction& f) {
    if (!(total_mass(f) > 0.0)) throw std::invalid_argument("density_cdf: total mass must be > 0");
    const int n = f.grid.n;
    std::vector<double> cdf(n);
    cdf[0] = 0.0;
    for (int i = 1; i < n; ++i)
        cdf[i] = cdf[i - 1] + 0.5 * (f.values[i - 1] + f.values[i]) * f.grid.dx;
    double running = cdf[0];
    for (int i = 1; i < n; ++i) {
        running = std::max(running, cdf[i]);
        cdf[i] = running;
    }
    double total = cdf[n - 1];
    for (int i = 0; i < n; ++i) cdf[i] /= total;
    cdf[0] = 0.0;
    cdf[n - 1] = 1.0;
    return GridFunction(f.grid, std::move(cdf));
}

}  // namespace mvsde
