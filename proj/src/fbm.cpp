#include "mvsde/fbm.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace mvsde {

namespace {

// fGn autocovariance at lag k for unit spacing
double fgn_cov(int k, double H) {
    double km = std::abs(static_cast<double>(k));
    return 0.5 * (std::pow(km + 1.0, 2.0 * H) - 2.0 * std::pow(km, 2.0 * H) +
                  std::pow(std::abs(km - 1.0), 2.0 * H));
}

std::mutex fftw_plan_mutex;  // FFTW planning is not thread-safe

// Davies-Harte: embed the L x L Toeplitz covariance into a circulant of
// size M = 2L, diagonalize by FFT, sample in the spectral domain.
// Returns false if any circulant eigenvalue is negative.
bool fgn_circulant(RngStream& rng, double H, int L, std::vector<double>& out) {
    const int M = 2 * L;
    std::vector<double> circ(M);
    for (int k = 0; k <= L; ++k) circ[k] = fgn_cov(k, H);
    for (int k = L + 1; k < M; ++k) circ[k] = circ[M - k];

    std::vector<fftw_complex> freq(M / 2 + 1);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_plan plan = fftw_plan_dft_r2c_1d(M, circ.data(), freq.data(), FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    std::vector<double> lambda(M);
    for (int j = 0; j <= M / 2; ++j) lambda[j] = freq[j][0];
    for (int j = M / 2 + 1; j < M; ++j) lambda[j] = lambda[M - j];
    for (double ev : lambda)
        if (ev < -1e-9 * lambda[0]) return false;
    for (double& ev : lambda)
        if (ev < 0.0) ev = 0.0;

    // spectral sample with the conjugate symmetry that makes the output real
    std::vector<fftw_complex> spec(M / 2 + 1);
    spec[0][0] = std::sqrt(lambda[0] / M) * rng.next_normal();
    spec[0][1] = 0.0;
    for (int j = 1; j < M / 2; ++j) {
        double s = std::sqrt(lambda[j] / (2.0 * M));
        spec[j][0] = s * rng.next_normal();
        spec[j][1] = s * rng.next_normal();
    }
    spec[M / 2][0] = std::sqrt(lambda[M / 2] / M) * rng.next_normal();
    spec[M / 2][1] = 0.0;

    std::vector<double> sample(M);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_plan plan = fftw_plan_dft_c2r_1d(M, spec.data(), sample.data(), FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    out.assign(sample.begin(), sample.begin() + L);
    return true;
}

// Dense Cholesky of the fGn covariance; O(L^3), last resort only.
void fgn_cholesky(RngStream& rng, double H, int L, std::vector<double>& out) {
    std::vector<double> chol(static_cast<std::size_t>(L) * L, 0.0);
    auto at = [&](int i, int j) -> double& { return chol[static_cast<std::size_t>(i) * L + j]; };
    for (int i = 0; i < L; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = fgn_cov(i - j, H);
            for (int k = 0; k < j; ++k) s -= at(i, k) * at(j, k);
            if (i == j) {
                if (s <= 0.0) throw std::runtime_error("fbm_path: covariance not positive definite");
                at(i, j) = std::sqrt(s);
            } else {
                at(i, j) = s / at(j, j);
            }
        }
    }
    std::vector<double> z(L);
    for (int i = 0; i < L; ++i) z[i] = rng.next_normal();
    out.assign(L, 0.0);
    for (int i = 0; i < L; ++i) {
        double s = 0.0;
        for (int k = 0; k <= i; ++k) s += at(i, k) * z[k];
        out[i] = s;
    }
}

}  // namespace

FbmPath fbm_path(SeedSpec seed, double H, int n, double dt) {
    if (!(H > 0.5 && H < 1.0)) throw std::invalid_argument("fbm_path: H must be in (1/2, 1)");
    if (n < 2) throw std::invalid_argument("fbm_path: n must be >= 2");
    if (!(dt > 0.0)) throw std::invalid_argument("fbm_path: dt must be > 0");

    RngStream rng(seed);
    const int L = n - 1;
    std::vector<double> fgn;
    FbmMethod method = FbmMethod::circulant;
    if (!fgn_circulant(rng, H, L, fgn)) {
        method = FbmMethod::cholesky;
        RngStream fresh(seed);  // same draws regardless of the failed attempt
        fgn_cholesky(fresh, H, L, fgn);
    }

    FbmPath path;
    path.H = H;
    path.n = n;
    path.dt = dt;
    path.method = method;
    path.values.resize(n);
    path.values[0] = 0.0;
    const double scale = std::pow(dt, H);
    for (int k = 0; k < L; ++k) path.values[k + 1] = path.values[k] + scale * fgn[k];
    return path;
}

}  // namespace mvsde
