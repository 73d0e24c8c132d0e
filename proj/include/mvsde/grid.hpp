#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mvsde {

// Uniform 1D grid on [lo, hi] with n nodes, node(i) = lo + i*dx.
struct SpatialGrid {
    double lo = 0.0;
    double hi = 1.0;
    int n = 2;
    double dx = 1.0;

    double node(int i) const { return lo + i * dx; }

    bool operator==(const SpatialGrid&) const = default;
};

inline SpatialGrid make_uniform_grid(double lo, double hi, int n) {
    if (!(lo < hi)) throw std::invalid_argument("make_uniform_grid: lo must be < hi");
    if (n < 2) throw std::invalid_argument("make_uniform_grid: need at least 2 nodes");
    SpatialGrid g;
    g.lo = lo;
    g.hi = hi;
    g.n = n;
    g.dx = (hi - lo) / (n - 1);
    return g;
}

// Real-valued function sampled at the nodes of a SpatialGrid.
struct GridFunction {
    SpatialGrid grid;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(SpatialGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (static_cast<int>(values.size()) != grid.n)
            throw std::invalid_argument("GridFunction: values length must equal grid.n");
    }
    static GridFunction zeros(SpatialGrid g) {
        return GridFunction(g, std::vector<double>(g.n, 0.0));
    }
};

// Piecewise-linear interpolation; 0 outside [lo, hi].
inline double interp_space(const GridFunction& f, double x) {
    const SpatialGrid& g = f.grid;
    double s = (x - g.lo) / g.dx;
    int r = static_cast<int>(std::lround(s));
    if (r >= 0 && r < g.n && x == g.node(r)) return f.values[r];  // exact node hit
    if (x < g.lo || x > g.hi) return 0.0;
    int i = static_cast<int>(s);
    if (i >= g.n - 1) return f.values[g.n - 1];
    double w = s - i;
    return f.values[i] + w * (f.values[i + 1] - f.values[i]);
}

// Solution field on [0,T] x grid: one row of values per stored time.
struct SpaceTimeField {
    SpatialGrid grid;
    std::vector<double> times;              // strictly increasing, times[0]=0
    std::vector<std::vector<double>> values;  // times.size() rows of grid.n

    double horizon() const { return times.back(); }

    GridFunction row(int i) const { return GridFunction(grid, values[i]); }
};

// Bilinear interpolation: linear in t between bracketing stored rows,
// linear in x within each row. t is clamped to [0,T] within 1 ulp.
inline double interp_spacetime(const SpaceTimeField& field, double t, double x) {
    const double T = field.times.back();
    if (t < 0.0) {
        if (t < -std::abs(std::nextafter(0.0, -1.0)) && t < -1e-15)
            throw std::invalid_argument("interp_spacetime: t < 0");
        t = 0.0;
    }
    if (t > T) {
        if (t > T + std::abs(T - std::nextafter(T, 2 * T + 1)) && t > T * (1 + 1e-15))
            throw std::invalid_argument("interp_spacetime: t > T");
        t = T;
    }
    const SpatialGrid& g = field.grid;
    {
        double sx = (x - g.lo) / g.dx;
        int rx = static_cast<int>(std::lround(sx));
        bool node_hit = rx >= 0 && rx < g.n && x == g.node(rx);
        if (!node_hit && (x < g.lo || x > g.hi)) return 0.0;
    }

    auto it = std::upper_bound(field.times.begin(), field.times.end(), t);
    int k = static_cast<int>(it - field.times.begin()) - 1;
    if (k >= static_cast<int>(field.times.size()) - 1) k = static_cast<int>(field.times.size()) - 2;
    if (k < 0) k = 0;
    double t0 = field.times[k], t1 = field.times[k + 1];
    double w = (t - t0) / (t1 - t0);

    double s = (x - g.lo) / g.dx;
    int i = static_cast<int>(s);
    double u = s - i;
    int r = static_cast<int>(std::lround(s));
    if (r >= 0 && r < g.n && x == g.node(r)) {
        i = r;
        u = 0.0;
    } else if (i >= g.n - 1) {
        i = g.n - 2;
        u = s - i;
    }
    auto at = [&](const std::vector<double>& row) {
        if (u == 0.0) return row[i];
        return row[i] + u * (row[i + 1] - row[i]);
    };
    if (w == 0.0) return at(field.values[k]);
    if (w == 1.0) return at(field.values[k + 1]);
    double v0 = at(field.values[k]);
    double v1 = at(field.values[k + 1]);
    return v0 + w * (v1 - v0);
}

}  // namespace mvsde
