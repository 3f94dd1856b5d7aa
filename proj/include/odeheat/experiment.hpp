#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "odeheat/extension.hpp"

namespace odeheat {

enum class ExperimentMode { Distributed, Boundary };

/// Full description of an experiment: geometry, potentials as expressions in
/// x and t, initial data, penalty sweep and solver options. Presets test1,
/// test2 and test3 fill this in; JSON configs map onto it field by field.
struct ExperimentConfig {
    ExperimentMode mode = ExperimentMode::Distributed;

    double L = 1.0;      ///< right end of the computational domain
    double ell = 0.0;    ///< original right end (boundary mode only)
    double T = 0.6;
    int Nx = 30;
    int Nt = 120;

    std::string a_expr = "0";
    std::string b_expr = "0";
    std::string c_expr = "0";
    double mu = 1.0;
    double kappa = 1.0;
    double omega0 = 0.0;
    double omega1 = 0.0;

    std::string y0_expr = "0";
    double z0 = 0.0;

    std::vector<double> epsilons{1e-1, 1e-2, 1e-3, 1e-4};
    double tol = 1e-3;
    int max_iter = 500;
    std::string f0_expr = "0";
    double f0_z = 0.0;

    double theta = 1.0;
    AdjointMode adjoint = AdjointMode::Discrete;

    std::string output_dir = "out";

    void validate() const;
};

/// One row of the sweep summary, mirroring the reported table layout.
struct SummaryRow {
    double epsilon;
    int n_iter;
    double norm_yT;
    double abs_zT;
    double norm_v;
};

/// Built-in experiment configurations. Throws on unknown names.
ExperimentConfig preset_config(const std::string& name);

/// Load and validate a JSON experiment configuration.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Run the configured sweep and write CSV outputs under config.output_dir:
/// summary.csv (one row per epsilon) plus, for the last epsilon in the list,
/// control.csv, state_y.csv, state_z.csv and norms_over_time.csv; boundary
/// mode additionally writes boundary_control.csv and reports the (0, ell)
/// re-solve norms in the summary. Returns the summary rows.
std::vector<SummaryRow> run_experiment(const ExperimentConfig& config);

/// Write summary rows as CSV with 6 significant digits and LF line endings.
void emit_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);

} // namespace odeheat
