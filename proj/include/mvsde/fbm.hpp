#pragma once

#include "mvsde/rng.hpp"

#include <vector>

namespace mvsde {

enum class FbmMethod { circulant, cholesky };

// Fractional Brownian motion sampled at t_k = k*dt, values[0] = 0.
struct FbmPath {
    double H = 0.75;
    int n = 0;
    double dt = 0.0;
    std::vector<double> values;
    FbmMethod method = FbmMethod::circulant;
};

// Samples B_H at n equispaced points via circulant embedding of the
// fractional Gaussian noise covariance (Davies-Harte); falls back to a
// Cholesky factorization when the embedding is not nonnegative definite.
// Restricted to H in (1/2, 1).
FbmPath fbm_path(SeedSpec seed, double H, int n, double dt);

}  // namespace mvsde
