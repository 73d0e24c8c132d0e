#pragma once

#include "mvsde/grid.hpp"

namespace mvsde {

// Heat-kernel smoothing at bandwidth t = 1/N. The kernel is truncated at
// truncation_radius (default 8*sqrt(1/N), where the Gaussian tail mass is
// below 1e-15).
struct MollifierSpec {
    double N = 1.0;
    double truncation_radius = 0.0;  // 0 -> default 8*sqrt(1/N)

    double bandwidth() const { return 1.0 / N; }
    double radius() const;
};

// Gaussian heat kernel p_t(z) = (2*pi*t)^{-1/2} exp(-z^2/(2t))
double heat_kernel(double t, double z);

// d/dz p_t(z) = -(z/t) p_t(z)
double heat_kernel_derivative(double t, double z);

// Smoothed drift b^N = h * p'_{1/N}, evaluated on the sub-grid of h.grid
// lying inside [h.lo + R, h.hi - R]; trapezoidal quadrature on the h grid.
// h must extend at least one truncation radius beyond the output grid.
GridFunction mollify_drift(const GridFunction& h, const MollifierSpec& spec,
                           const SpatialGrid& out_grid);

// Serial reference for the OpenMP kernel above; identical output bit-for-bit.
GridFunction mollify_drift_serial(const GridFunction& h, const MollifierSpec& spec,
                                  const SpatialGrid& out_grid);

}  // namespace mvsde
