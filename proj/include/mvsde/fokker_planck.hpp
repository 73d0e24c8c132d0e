#pragma once

#include "mvsde/grid.hpp"
#include "mvsde/nonlinear.hpp"

namespace mvsde {

struct FpSolverOptions {
    double abs_tol = 1e-9;
    double rel_tol = 1e-7;
    double max_step = 0.0;       // 0 -> no cap beyond output spacing
    int store_count = 2049;      // stored time slices including t=0 and t=T
    // boundary: homogeneous Dirichlet (the only supported condition)
};

struct FpDiagnostics {
    std::vector<double> mass_trace;  // trapezoidal mass at each stored time
    double min_value = 0.0;          // global minimum over stored slices
    long accepted_steps = 0;
    long rejected_steps = 0;
};

// Integrates d/dt rho = 1/2 Lap rho - d/dx [Ftilde(rho) bN] by method of
// lines: second-order central stencils, rho pinned to 0 at both ends, and a
// Dormand-Prince 4(5) adaptive pair in time with step landing on the
// store_count equispaced output times.
std::pair<SpaceTimeField, FpDiagnostics> solve_fp(const GridFunction& rho0,
                                                  const GridFunction& bN, const NonlinearF& F,
                                                  double T, const FpSolverOptions& opts);

// Trapezoidal quadrature of f over its grid.
double total_mass(const GridFunction& f);

// Cumulative trapezoidal integral, made non-decreasing by a running maximum
// and normalized so cdf(hi) = 1.
GridFunction density_cdf(const GridFunction& f);

}  // namespace mvsde
