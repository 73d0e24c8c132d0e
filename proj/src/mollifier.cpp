#include "mvsde/mollifier.hpp"

#include <cmath>
#include <stdexcept>

namespace mvsde {

double MollifierSpec::radius() const {
    if (truncation_radius > 0.0) return truncation_radius;
    return 8.0 * std::sqrt(1.0 / N);
}

double heat_kernel(double t, double z) {
    if (!(t > 0.0)) throw std::invalid_argument("heat_kernel: t must be > 0");
    return std::exp(-z * z / (2.0 * t)) / std::sqrt(2.0 * M_PI * t);
}

double heat_kernel_derivative(double t, double z) {
    if (!(t > 0.0)) throw std::invalid_argument("heat_kernel_derivative: t must be > 0");
    return -(z / t) * heat_kernel(t, z);
}

namespace {

// b^N(x_i) = sum_j h(y_j) p'_{1/N}(x_i - y_j) dy over |x_i - y_j| <= R,
// trapezoidal weights (1/2 at the two support ends). The kernel offsets are
// exact multiples of dy, so the weight table is shared by all output nodes.
void convolve(const GridFunction& h, const MollifierSpec& spec, const SpatialGrid& out_grid,
              std::vector<double>& out, bool parallel) {
    if (!(spec.N > 0.0)) throw std::invalid_argument("mollify_drift: N must be > 0");
    const double t = spec.bandwidth();
    const double R = spec.radius();
    const double dy = h.grid.dx;
    if (std::abs(out_grid.dx - dy) > 1e-12 * dy)
        throw std::invalid_argument("mollify_drift: h grid and output grid must share dx");
    if (h.grid.lo > out_grid.lo - R + 1e-12 * dy || h.grid.hi < out_grid.hi + R - 1e-12 * dy)
        throw std::invalid_argument("mollify_drift: h support must extend a truncation radius beyond the output grid");

    const int half = static_cast<int>(std::floor(R / dy));
    std::vector<double> kernel(2 * half + 1);
    for (int k = -half; k <= half; ++k) {
        double w = (k == -half || k == half) ? 0.5 : 1.0;
        kernel[k + half] = w * heat_kernel_derivative(t, -static_cast<double>(k) * dy) * dy;
    }
    // index of out_grid node 0 within the h grid
    const int offset = static_cast<int>(std::lround((out_grid.lo - h.grid.lo) / dy));
    if (offset - half < 0 || offset + (out_grid.n - 1) + half >= h.grid.n)
        throw std::invalid_argument("mollify_drift: insufficient h support");

    out.assign(out_grid.n, 0.0);
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < out_grid.n; ++i) {
        const double* hv = h.values.data() + offset + i - half;
        double s = 0.0;
        for (int k = 0; k < 2 * half + 1; ++k) s += hv[k] * kernel[k];
        out[i] = s;
    }
}

}  // namespace

GridFunction mollify_drift(const GridFunction& h, const MollifierSpec& spec,
                           const SpatialGrid& out_grid) {
    std::vector<double> out;
    convolve(h, spec, out_grid, out, true);
    return GridFunction(out_grid, std::move(out));
}

GridFunction mollify_drift_serial(const GridFunction& h, const MollifierSpec& spec,
                                  const SpatialGrid& out_grid) {
    std::vector<double> out;
    convolve(h, spec, out_grid, out, false);
    return GridFunction(out_grid, std::move(out));
}

}  // namespace mvsde
