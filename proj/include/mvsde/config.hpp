#pragma once

#include "mvsde/fokker_planck.hpp"
#include "mvsde/nonlinear.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mvsde {

// All tunables of an experiment. Defaults follow the reference setup:
// T = 1, domain [-10, 10] with 4001 nodes, 2^11 reference steps, coarse
// levels 2^7..2^9, 10^4 paths.
struct ExperimentConfig {
    double beta = 0.0;        // required, (0, 1/2)
    double lambda = 0.01;     // (0, 1/2 - beta)
    double hurst = 0.0;       // defaults to 1 - beta
    double T = 1.0;
    double L = 10.0;
    int n_space = 4001;
    int m_ref = 2048;
    std::vector<int> levels = {128, 256, 512};
    int n_paths = 10000;
    int n_runs = 1;
    bool fixed_drift = true;  // one fBm path shared by all runs vs fresh per run
    std::string F_kind = "sin";  // sin | cos | sigmoid
    double F_amplitude = 1.0;
    double F_steepness = 100.0;
    double F_center = 0.2;
    std::uint64_t seed = 1;
    FpSolverOptions pde;

    NonlinearF make_F() const;
};

// Parses flat `key = value` text (one pair per line, '#' comments). Unknown
// keys and invariant violations are errors; beta is required.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Fully resolved config in the same format parse_config_text accepts;
// parsing the echo reproduces an identical config.
std::string config_echo(const ExperimentConfig& cfg);

}  // namespace mvsde
