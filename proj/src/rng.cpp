#include "mvsde/rng.hpp"

#include <cmath>

namespace mvsde {

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("inverse_normal_cdf: p must be in (0,1)");

    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // one Halley step against erfc brings the error to machine level
    const double sqrt2 = 1.4142135623730951;
    double e = 0.5 * std::erfc(-x / sqrt2) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

BrownianIncrements brownian_increments(SeedSpec seed, int m, double T) {
    if (m < 1) throw std::invalid_argument("brownian_increments: m must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("brownian_increments: T must be > 0");
    RngStream rng(seed);
    BrownianIncrements w;
    w.m = m;
    w.T = T;
    w.dW.resize(m);
    const double scale = std::sqrt(T / m);
    for (int i = 0; i < m; ++i) w.dW[i] = scale * rng.next_normal();
    return w;
}

BrownianIncrements coarsen_increments(const BrownianIncrements& fine, int factor) {
    if (factor < 1 || fine.m % factor != 0)
        throw std::invalid_argument("coarsen_increments: factor must divide fine.m");
    BrownianIncrements coarse;
    coarse.m = fine.m / factor;
    coarse.T = fine.T;
    coarse.dW.resize(coarse.m);
    for (int j = 0; j < coarse.m; ++j) {
        double s = 0.0;
        for (int k = 0; k < factor; ++k) s += fine.dW[j * factor + k];
        coarse.dW[j] = s;
    }
    return coarse;
}

std::vector<double> sample_initial(SeedSpec seed, int n_paths) {
    if (n_paths < 1) throw std::invalid_argument("sample_initial: n_paths must be >= 1");
    RngStream rng(seed);
    std::vector<double> x0(n_paths);
    for (int i = 0; i < n_paths; ++i) x0[i] = rng.next_normal();
    return x0;
}

}  // namespace mvsde
