#include "mvsde/pipeline.hpp"

#include "mvsde/csv.hpp"
#include "mvsde/fbm.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

namespace mvsde {

namespace {

constexpr std::uint64_t kDriftStreamBase = 0x00d1f7'00000000ULL;

void write_text(const std::string& path, const std::string& text) {
    auto out = csv_open(path);
    out << text;
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::filesystem::create_directories(dir);
}

// N values for the sweep levels plus the reference, per N(m) = round(m^kappa)
std::map<int, double> level_smoothing(const ExperimentConfig& cfg) {
    RatePlan plan = RatePlan::make(cfg.beta, cfg.lambda);
    std::map<int, double> N;
    for (int m : cfg.levels) N[m] = plan.N_of_m(m);
    N[cfg.m_ref] = plan.N_of_m(cfg.m_ref);
    return N;
}

}  // namespace

SpatialGrid main_grid(const ExperimentConfig& cfg) {
    return make_uniform_grid(-cfg.L, cfg.L, cfg.n_space);
}

GridFunction initial_density(const SpatialGrid& grid) {
    std::vector<double> v(grid.n);
    const double c = 1.0 / std::sqrt(2.0 * M_PI);
    for (int i = 0; i < grid.n; ++i) {
        double x = grid.node(i);
        v[i] = c * std::exp(-0.5 * x * x);
    }
    return GridFunction(grid, std::move(v));
}

GridFunction generate_h(const ExperimentConfig& cfg, double N_min, int run_index) {
    SpatialGrid grid = main_grid(cfg);
    MollifierSpec widest{N_min, 0.0};
    int pad = static_cast<int>(std::ceil(widest.radius() / grid.dx)) + 1;
    SpatialGrid ext = make_uniform_grid(grid.lo - pad * grid.dx, grid.hi + pad * grid.dx,
                                        grid.n + 2 * pad);

    std::uint64_t stream = kDriftStreamBase + (cfg.fixed_drift ? 0 : static_cast<std::uint64_t>(run_index));
    FbmPath path = fbm_path(SeedSpec{cfg.seed, stream}, cfg.hurst, ext.n, ext.dx);
    return GridFunction(ext, path.values);
}

LevelDrift build_level(const ExperimentConfig& cfg, const GridFunction& h, double N,
                       const NonlinearF& F) {
    SpatialGrid grid = main_grid(cfg);
    LevelDrift level;
    level.N = N;
    level.bN = mollify_drift(h, MollifierSpec{N, 0.0}, grid);
    auto [field, diag] = solve_fp(initial_density(grid), level.bN, F, cfg.T, cfg.pde);
    level.field = std::move(field);
    level.diag = std::move(diag);
    return level;
}

DriftGenResult run_drift_gen(const ExperimentConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    auto N_by_level = level_smoothing(cfg);
    std::set<double> Ns;
    for (const auto& [m, N] : N_by_level) Ns.insert(N);

    double N_min = *Ns.begin();
    GridFunction h_ext = generate_h(cfg, N_min, 0);
    SpatialGrid grid = main_grid(cfg);

    DriftGenResult result;
    std::vector<double> h_main(grid.n);
    int offset = static_cast<int>(std::lround((grid.lo - h_ext.grid.lo) / grid.dx));
    for (int i = 0; i < grid.n; ++i) h_main[i] = h_ext.values[offset + i];
    result.h = GridFunction(grid, std::move(h_main));
    for (double N : Ns) result.bN[N] = mollify_drift(h_ext, MollifierSpec{N, 0.0}, grid);

    auto out = csv_open(join(out_dir, "drift.csv"));
    out << "x,h";
    for (double N : Ns) out << ",bN_" << csv_num(N);
    out << "\n";
    for (int i = 0; i < grid.n; ++i) {
        out << csv_num(grid.node(i)) << "," << csv_num(result.h.values[i]);
        for (double N : Ns) out << "," << csv_num(result.bN[N].values[i]);
        out << "\n";
    }
    write_text(join(out_dir, "config.txt"), config_echo(cfg));
    return result;
}

DensityCompareResult run_density_compare(const ExperimentConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    NonlinearF F = cfg.make_F();
    RatePlan plan = RatePlan::make(cfg.beta, cfg.lambda);
    double N_ref = plan.N_of_m(cfg.m_ref);

    GridFunction h = generate_h(cfg, N_ref, 0);
    LevelDrift level = build_level(cfg, h, N_ref, F);

    double mass_dev = 0.0;
    for (double mass : level.diag.mass_trace) mass_dev = std::max(mass_dev, std::abs(mass - 1.0));
    if (mass_dev > 1e-4)
        throw std::runtime_error("density-compare: mass gate breached, deviation " +
                                 std::to_string(mass_dev));
    if (level.diag.min_value < -1e-3)
        throw std::runtime_error("density-compare: positivity gate breached, min " +
                                 std::to_string(level.diag.min_value));

    EnsembleOptions eopts;
    eopts.seed = SeedSpec{cfg.seed, 0};
    eopts.n_paths = cfg.n_paths;
    eopts.m_ref = cfg.m_ref;
    eopts.T = cfg.T;
    DriftEvaluator ref_drift = level.evaluator(F);
    EnsembleResult ens = simulate_ensemble(eopts, {}, ref_drift, {}, N_ref);

    DensityCompareResult result;
    result.rho_T = level.field.row(static_cast<int>(level.field.times.size()) - 1);
    result.diag = level.diag;
    result.terminal = ens.reference;
    result.ks = ks_test(ens.reference.terminal, density_cdf(result.rho_T));

    write_grid_function(join(out_dir, "rho_T.csv"), result.rho_T, "rho");
    write_column(join(out_dir, "terminal_ref.csv"), ens.reference.terminal, "x_T");
    {
        auto out = csv_open(join(out_dir, "ks.csv"));
        out << "F,statistic,p_value,n\n";
        out << F.name() << "," << csv_num(result.ks.statistic) << ","
            << csv_num(result.ks.p_value) << "," << result.ks.n << "\n";
    }
    write_text(join(out_dir, "config.txt"), config_echo(cfg));
    return result;
}

RateSweepResult run_rate_sweep(const ExperimentConfig& cfg, const std::string& out_dir) {
    if (cfg.levels.size() < 2)
        throw std::runtime_error("rate-sweep: need at least 2 levels");
    ensure_dir(out_dir);
    NonlinearF F = cfg.make_F();
    RatePlan plan = RatePlan::make(cfg.beta, cfg.lambda);
    auto N_by_level = level_smoothing(cfg);
    double N_ref = N_by_level.at(cfg.m_ref);
    double N_min = N_by_level.begin()->second;

    RateSweepResult result;
    result.theoretical_rate = plan.rate;
    result.rate_limit = mvsde::rate_limit(cfg.beta);

    auto errors_out = csv_open(join(out_dir, "errors.csv"));
    errors_out << "run,m,N,strong_error\n";

    GridFunction h = generate_h(cfg, N_min, 0);
    for (int run = 0; run < cfg.n_runs; ++run) {
        if (!cfg.fixed_drift && run > 0) h = generate_h(cfg, N_min, run);

        std::map<int, LevelDrift> levels;
        for (int m : cfg.levels)
            if (m != cfg.m_ref) levels.emplace(m, build_level(cfg, h, N_by_level.at(m), F));
        LevelDrift ref = build_level(cfg, h, N_ref, F);

        std::map<int, DriftEvaluator> drifts;
        std::map<int, double> Ns;
        for (const auto& [m, lvl] : levels) {
            drifts[m] = lvl.evaluator(F);
            Ns[m] = lvl.N;
        }
        for (int m : cfg.levels)
            if (m == cfg.m_ref) {
                drifts[m] = ref.evaluator(F);
                Ns[m] = N_ref;
            }

        EnsembleOptions eopts;
        eopts.seed = SeedSpec{cfg.seed, static_cast<std::uint64_t>(run) *
                                            static_cast<std::uint64_t>(cfg.n_paths)};
        eopts.n_paths = cfg.n_paths;
        eopts.m_ref = cfg.m_ref;
        eopts.T = cfg.T;
        EnsembleResult ens = simulate_ensemble(eopts, drifts, ref.evaluator(F), Ns, N_ref);

        std::vector<std::pair<int, double>> points;
        for (const auto& lvl : ens.levels) {
            double err = strong_error(lvl, ens.reference);
            errors_out << run << "," << lvl.m << "," << csv_num(lvl.N) << "," << csv_num(err)
                       << "\n";
            if (err < 1e-13) result.degenerate = true;
            points.emplace_back(lvl.m, err);
        }
        if (!result.degenerate) {
            RateReport report = fit_rate(points);
            report.theoretical_rate = plan.rate;
            result.runs.push_back(std::move(report));
        }

        if (run == 0) {
            for (const auto& lvl : ens.levels)
                write_column(join(out_dir, "terminal_m" + std::to_string(lvl.m) + ".csv"),
                             lvl.terminal, "x_T");
            write_column(join(out_dir, "terminal_ref.csv"), ens.reference.terminal, "x_T");
        }
    }

    if (!result.runs.empty()) {
        double s = 0.0;
        for (const auto& r : result.runs) s += r.slope;
        result.mean_rate = s / result.runs.size();
        if (result.runs.size() > 1) {
            double v = 0.0;
            for (const auto& r : result.runs) v += (r.slope - result.mean_rate) * (r.slope - result.mean_rate);
            v /= (result.runs.size() - 1);
            result.half_width_95 = 1.96 * std::sqrt(v / result.runs.size());
        }
    }

    auto rates_out = csv_open(join(out_dir, "rates.csv"));
    rates_out << "run,empirical_rate,theoretical_rate,rate_limit,degenerate\n";
    for (std::size_t r = 0; r < result.runs.size(); ++r)
        rates_out << r << "," << csv_num(result.runs[r].slope) << "," << csv_num(plan.rate) << ","
                  << csv_num(result.rate_limit) << ",0\n";
    rates_out << "summary," << csv_num(result.mean_rate) << "," << csv_num(plan.rate) << ","
              << csv_num(result.rate_limit) << "," << (result.degenerate ? 1 : 0) << "\n";
    {
        auto out = csv_open(join(out_dir, "summary.csv"));
        out << "mean_empirical_rate,half_width_95,theoretical_rate,rate_limit,degenerate\n";
        out << csv_num(result.mean_rate) << "," << csv_num(result.half_width_95) << ","
            << csv_num(plan.rate) << "," << csv_num(result.rate_limit) << ","
            << (result.degenerate ? 1 : 0) << "\n";
    }
    write_text(join(out_dir, "config.txt"), config_echo(cfg));
    return result;
}

}  // namespace mvsde
