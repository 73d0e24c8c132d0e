// Timing comparison between the serial reference kernels and their
// OpenMP counterparts: heat-kernel convolution and coupled Euler ensembles.
#include "mvsde/euler.hpp"
#include "mvsde/fbm.hpp"
#include "mvsde/mollifier.hpp"
#include "mvsde/pipeline.hpp"

#include <chrono>
#include <cstdio>
#ifdef _OPENMP
#include <omp.h>
#endif

using namespace mvsde;

namespace {

double seconds(auto fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled, serial build\n");
#endif

    ExperimentConfig cfg;
    cfg.beta = 0.49;
    cfg.hurst = 1.0 - cfg.beta;
    cfg.n_paths = 10000;

    const double N = 16.0;
    GridFunction h = generate_h(cfg, N, 0);
    SpatialGrid grid = main_grid(cfg);

    GridFunction b_serial, b_parallel;
    double t_moll_s = seconds([&] { b_serial = mollify_drift_serial(h, MollifierSpec{N, 0.0}, grid); });
    double t_moll_p = seconds([&] { b_parallel = mollify_drift(h, MollifierSpec{N, 0.0}, grid); });
    bool moll_same = b_serial.values == b_parallel.values;
    std::printf("mollify_drift   serial %8.4f s   openmp %8.4f s   speedup %5.2fx   bitwise %s\n",
                t_moll_s, t_moll_p, t_moll_s / t_moll_p, moll_same ? "equal" : "DIFFER");

    // zero-field drift: exercises the full interpolation path
    SpaceTimeField field;
    field.grid = grid;
    field.times = {0.0, cfg.T};
    field.values = {std::vector<double>(grid.n, 0.0), std::vector<double>(grid.n, 0.0)};
    NonlinearF F = NonlinearF::cosine();
    DriftEvaluator drift{&field, &b_serial, &F};

    EnsembleOptions eopts;
    eopts.seed = SeedSpec{7, 0};
    eopts.n_paths = cfg.n_paths;
    eopts.m_ref = 2048;
    std::map<int, DriftEvaluator> levels{{128, drift}, {256, drift}, {512, drift}};

    EnsembleResult r_serial, r_parallel;
    double t_ens_s = seconds([&] { r_serial = simulate_ensemble_serial(eopts, levels, drift); });
    double t_ens_p = seconds([&] { r_parallel = simulate_ensemble(eopts, levels, drift); });
    bool ens_same = r_serial.reference.terminal == r_parallel.reference.terminal;
    for (std::size_t i = 0; i < r_serial.levels.size(); ++i)
        ens_same = ens_same && r_serial.levels[i].terminal == r_parallel.levels[i].terminal;
    std::printf("ensemble        serial %8.4f s   openmp %8.4f s   speedup %5.2fx   bitwise %s\n",
                t_ens_s, t_ens_p, t_ens_s / t_ens_p, ens_same ? "equal" : "DIFFER");

    return (moll_same && ens_same) ? 0 : 1;
}
