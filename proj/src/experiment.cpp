#include "odeheat/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "odeheat/expression.hpp"

namespace odeheat {

namespace {

using nlohmann::json;

std::string fmt(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

HState sample_state(const std::string& expr, double zvalue, const SpaceTimeGrid& grid) {
    const Expression e = Expression::parse(expr);
    HState s = HState::zero(grid);
    for (int j = 0; j <= grid.num_space_intervals(); ++j)
        s.y[static_cast<std::size_t>(j)] = e.eval(grid.node(j), 0.0);
    s.z = zvalue;
    return s;
}

ProblemData sample_problem(const ExperimentConfig& cfg, const ControlRegion& region,
                           const SpaceTimeGrid& grid) {
    const Expression a = Expression::parse(cfg.a_expr);
    const Expression b = Expression::parse(cfg.b_expr);
    const Expression c = Expression::parse(cfg.c_expr);
    return ProblemData::sample(
        [&a](double x, double t) { return a.eval(x, t); },
        [&b](double x, double t) { return b.eval(x, t); },
        [&c](double t) { return c.eval(0.0, t); },
        Coupling(cfg.mu, cfg.kappa), region, grid);
}

void write_trajectory_files(const Trajectory& traj, const SpaceTimeGrid& grid,
                            const std::filesystem::path& dir) {
    {
        auto out = open_out(dir / "state_y.csv");
        out << "t";
        for (int j = 0; j <= grid.num_space_intervals(); ++j) out << ",y" << j;
        out << "\n";
        for (int n = 0; n <= grid.num_time_steps(); ++n) {
            out << fmt(grid.level(n), 17);
            const auto& y = traj.states[static_cast<std::size_t>(n)].y;
            for (double v : y) out << "," << fmt(v, 17);
            out << "\n";
        }
    }
    {
        auto out = open_out(dir / "state_z.csv");
        out << "t,z\n";
        for (int n = 0; n <= grid.num_time_steps(); ++n)
            out << fmt(grid.level(n), 17) << ","
                << fmt(traj.states[static_cast<std::size_t>(n)].z, 17) << "\n";
    }
    {
        auto out = open_out(dir / "norms_over_time.csv");
        out << "t,norm_y,abs_z\n";
        for (int n = 0; n <= grid.num_time_steps(); ++n) {
            const auto& s = traj.states[static_cast<std::size_t>(n)];
            out << fmt(grid.level(n), 17) << "," << fmt(field_l2_norm(s.y, grid), 17) << ","
                << fmt(std::abs(s.z), 17) << "\n";
        }
    }
}

void write_control_file(const SpaceTimeField& v, const ControlRegion& region,
                        const SpaceTimeGrid& grid, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "t";
    for (int j = region.first_node(); j <= region.last_node(); ++j) out << "," << j;
    out << "\n";
    for (int n = 0; n <= grid.num_time_steps(); ++n) {
        out << fmt(grid.level(n), 17);
        for (int j = region.first_node(); j <= region.last_node(); ++j)
            out << "," << fmt(v.at(n, j), 17);
        out << "\n";
    }
}

void write_boundary_control_file(const BoundaryControl& bc, const SpaceTimeGrid& grid,
                                 const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "t,u\n";
    for (int n = 0; n <= grid.num_time_steps(); ++n)
        out << fmt(grid.level(n), 17) << "," << fmt(bc.u[static_cast<std::size_t>(n)], 17)
            << "\n";
}

void write_config_echo(const ExperimentConfig& cfg, const std::filesystem::path& path) {
    json j;
    j["mode"] = cfg.mode == ExperimentMode::Distributed ? "distributed" : "boundary";
    j["grid"] = {{"L", cfg.L}, {"T", cfg.T}, {"Nx", cfg.Nx}, {"Nt", cfg.Nt}};
    if (cfg.mode == ExperimentMode::Boundary) j["grid"]["ell"] = cfg.ell;
    j["problem"] = {{"a", cfg.a_expr}, {"b", cfg.b_expr}, {"c", cfg.c_expr},
                    {"mu", cfg.mu},    {"kappa", cfg.kappa},
                    {"omega", json::array({cfg.omega0, cfg.omega1})}};
    j["initial"] = {{"y0", cfg.y0_expr}, {"z0", cfg.z0}};
    j["hum"] = {{"epsilons", cfg.epsilons}, {"tol", cfg.tol}, {"max_iter", cfg.max_iter},
                {"f0", cfg.f0_expr},        {"f0_z", cfg.f0_z}};
    j["solver"] = {{"theta", cfg.theta},
                   {"adjoint", cfg.adjoint == AdjointMode::Discrete ? "discrete" : "continuous"}};
    j["output_dir"] = cfg.output_dir;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

std::vector<SummaryRow> run_distributed(const ExperimentConfig& cfg,
                                        const std::filesystem::path& dir) {
    const SpaceTimeGrid grid(cfg.L, cfg.T, cfg.Nx, cfg.Nt);
    const ControlRegion region(cfg.omega0, cfg.omega1, grid);
    const ProblemData data = sample_problem(cfg, region, grid);
    const HState initial = sample_state(cfg.y0_expr, cfg.z0, grid);
    const HState guess = sample_state(cfg.f0_expr, cfg.f0_z, grid);
    SolverConfig solver;
    solver.theta = cfg.theta;
    solver.adjoint_mode = cfg.adjoint;

    std::vector<SummaryRow> rows;
    for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
        const double eps = cfg.epsilons[i];
        const HumResult result =
            hum_cg(initial, data, grid, solver, HumConfig(eps, cfg.tol, cfg.max_iter, guess));
        rows.push_back({eps, result.iterations, result.norm_yT, result.abs_zT,
                        result.norm_control});
        if (i + 1 == cfg.epsilons.size()) {
            const Trajectory traj = solve_forward(result.control, initial, data, grid, solver);
            write_trajectory_files(traj, grid, dir);
            write_control_file(result.control, region, grid, dir / "control.csv");
        }
    }
    return rows;
}

std::vector<SummaryRow> run_boundary(const ExperimentConfig& cfg,
                                     const std::filesystem::path& dir) {
    const SpaceTimeGrid grid(cfg.L, cfg.T, cfg.Nx, cfg.Nt);
    const ControlRegion region(cfg.omega0, cfg.omega1, grid);
    const ExtensionConfig ext(cfg.ell, grid, region);
    const SpaceTimeGrid sub = ext.restricted_grid();

    const ProblemData data = sample_problem(cfg, region, grid);
    // The restricted problem reuses the potentials on (0, ell); its control
    // region is inert (the verification solve runs without a source).
    const ProblemData sub_data = sample_problem(cfg, ControlRegion(0.0, cfg.ell, sub), sub);

    const HState initial_sub = sample_state(cfg.y0_expr, cfg.z0, sub);
    HState initial = HState(extend_initial(initial_sub.y, ext), cfg.z0);
    const HState guess = sample_state(cfg.f0_expr, cfg.f0_z, grid);
    SolverConfig solver;
    solver.theta = cfg.theta;
    solver.adjoint_mode = cfg.adjoint;

    std::vector<SummaryRow> rows;
    for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
        const double eps = cfg.epsilons[i];
        const HumResult result =
            hum_cg(initial, data, grid, solver, HumConfig(eps, cfg.tol, cfg.max_iter, guess));
        const Trajectory traj = solve_forward(result.control, initial, data, grid, solver);
        const BoundaryControl bc = extract_trace_control(traj, ext);
        const VerificationNorms ver =
            verify_boundary_control(bc, initial_sub, sub_data, sub, solver);
        rows.push_back({eps, result.iterations, ver.norm_yT, ver.abs_zT, ver.norm_u});
        if (i + 1 == cfg.epsilons.size()) {
            write_trajectory_files(traj, grid, dir);
            write_control_file(result.control, region, grid, dir / "control.csv");
            write_boundary_control_file(bc, grid, dir / "boundary_control.csv");
        }
    }
    return rows;
}

} // namespace

void ExperimentConfig::validate() const {
    if (epsilons.empty())
        throw std::invalid_argument("config: epsilon list must be nonempty");
    for (double e : epsilons)
        if (!(e > 0.0))
            throw std::invalid_argument("config: epsilons must be strictly positive");
    if (!(mu * kappa > 0.0))
        throw std::invalid_argument("config: coupling assumption mu*kappa > 0 violated");
    if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("config: max_iter must be >= 1");
    if (!(theta >= 0.5 && theta <= 1.0))
        throw std::invalid_argument("config: theta must lie in [0.5, 1]");
    if (mode == ExperimentMode::Boundary && !(ell > 0.0 && ell < L))
        throw std::invalid_argument("config: boundary mode requires 0 < ell < L");
    // Expressions must parse; errors carry the offending column.
    Expression::parse(a_expr);
    Expression::parse(b_expr);
    Expression::parse(c_expr);
    Expression::parse(y0_expr);
    Expression::parse(f0_expr);
}

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig cfg;
    cfg.T = 0.6;
    cfg.Nt = 120;
    cfg.tol = 1e-3;
    cfg.epsilons = {1e-1, 1e-2, 1e-3, 1e-4};
    cfg.f0_expr = "0.4*sin(pi*x)";
    cfg.f0_z = 0.0;
    cfg.mu = 1.0;
    cfg.kappa = 1.0;
    // The reported iteration counts track the plain backward discretization;
    // the exact-transpose mode reaches the same minimizers in far fewer steps.
    cfg.adjoint = AdjointMode::Continuous;

    if (name == "test1") {
        cfg.mode = ExperimentMode::Distributed;
        cfg.L = 1.0;
        cfg.Nx = 30;
        cfg.omega0 = 0.3;
        cfg.omega1 = 0.7;
        cfg.a_expr = "1";
        cfg.b_expr = "0";
        cfg.c_expr = "1";
        cfg.y0_expr = "-10*sin(pi*x)";
        cfg.z0 = 0.0;
    } else if (name == "test2") {
        cfg.mode = ExperimentMode::Distributed;
        cfg.L = 1.0;
        cfg.Nx = 30;
        cfg.omega0 = 0.3;
        cfg.omega1 = 0.7;
        cfg.a_expr = "1";
        cfg.b_expr = "1";
        cfg.c_expr = "1";
        cfg.y0_expr = "10*exp(-0.5*(x-0.5)^2)";
        cfg.z0 = 10.0 * std::exp(-0.125); // y0(0)
    } else if (name == "test3") {
        cfg.mode = ExperimentMode::Boundary;
        cfg.ell = 1.0;
        cfg.L = 2.0;
        cfg.Nx = 60;
        cfg.omega0 = 1.3;
        cfg.omega1 = 1.7;
        cfg.a_expr = "0";
        cfg.b_expr = "20";
        cfg.c_expr = "0";
        cfg.y0_expr = "-10*sin(pi*x)";
        cfg.z0 = 0.0;
    } else {
        throw std::invalid_argument("unknown preset '" + name +
                                    "' (expected test1, test2 or test3)");
    }
    cfg.output_dir = "out_" + name;
    cfg.validate();
    return cfg;
}

namespace {

template <typename T>
T require_field(const json& j, const std::string& where, const std::string& key) {
    if (!j.contains(key))
        throw std::invalid_argument("config: missing field " + where + "." + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw std::invalid_argument("config: bad value for " + where + "." + key + ": " +
                                    e.what());
    }
}

template <typename T>
T optional_field(const json& j, const std::string& where, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    return require_field<T>(j, where, key);
}

} // namespace

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: " + path.string() + ": " + e.what());
    }

    ExperimentConfig cfg;
    const std::string mode = require_field<std::string>(j, "", "mode");
    if (mode == "distributed")
        cfg.mode = ExperimentMode::Distributed;
    else if (mode == "boundary")
        cfg.mode = ExperimentMode::Boundary;
    else
        throw std::invalid_argument("config: mode must be 'distributed' or 'boundary'");

    const json grid = require_field<json>(j, "", "grid");
    cfg.L = require_field<double>(grid, "grid", "L");
    cfg.T = require_field<double>(grid, "grid", "T");
    cfg.Nx = require_field<int>(grid, "grid", "Nx");
    cfg.Nt = require_field<int>(grid, "grid", "Nt");
    if (cfg.mode == ExperimentMode::Boundary)
        cfg.ell = require_field<double>(grid, "grid", "ell");

    const json prob = require_field<json>(j, "", "problem");
    cfg.a_expr = require_field<std::string>(prob, "problem", "a");
    cfg.b_expr = require_field<std::string>(prob, "problem", "b");
    cfg.c_expr = require_field<std::string>(prob, "problem", "c");
    cfg.mu = require_field<double>(prob, "problem", "mu");
    cfg.kappa = require_field<double>(prob, "problem", "kappa");
    const auto omega = require_field<std::vector<double>>(prob, "problem", "omega");
    if (omega.size() != 2)
        throw std::invalid_argument("config: problem.omega must be [w0, w1]");
    cfg.omega0 = omega[0];
    cfg.omega1 = omega[1];

    const json init = require_field<json>(j, "", "initial");
    cfg.y0_expr = require_field<std::string>(init, "initial", "y0");
    cfg.z0 = optional_field<double>(init, "initial", "z0", 0.0);

    if (j.contains("hum")) {
        const json hum = j.at("hum");
        cfg.epsilons = optional_field<std::vector<double>>(hum, "hum", "epsilons", cfg.epsilons);
        cfg.tol = optional_field<double>(hum, "hum", "tol", cfg.tol);
        cfg.max_iter = optional_field<int>(hum, "hum", "max_iter", cfg.max_iter);
        cfg.f0_expr = optional_field<std::string>(hum, "hum", "f0", cfg.f0_expr);
        cfg.f0_z = optional_field<double>(hum, "hum", "f0_z", cfg.f0_z);
    }
    if (j.contains("solver")) {
        const json solver = j.at("solver");
        cfg.theta = optional_field<double>(solver, "solver", "theta", cfg.theta);
        const std::string adj =
            optional_field<std::string>(solver, "solver", "adjoint", "discrete");
        if (adj == "discrete")
            cfg.adjoint = AdjointMode::Discrete;
        else if (adj == "continuous")
            cfg.adjoint = AdjointMode::Continuous;
        else
            throw std::invalid_argument("config: solver.adjoint must be 'discrete' or 'continuous'");
    }
    cfg.output_dir = optional_field<std::string>(j, "", "output_dir", cfg.output_dir);
    cfg.validate();
    return cfg;
}

std::vector<SummaryRow> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::filesystem::path dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + dir.string() + ": " +
                                 ec.message());

    const std::vector<SummaryRow> rows = cfg.mode == ExperimentMode::Distributed
                                             ? run_distributed(cfg, dir)
                                             : run_boundary(cfg, dir);
    emit_summary(rows, dir / "summary.csv");
    write_config_echo(cfg, dir / "config_echo.json");
    return rows;
}

void emit_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "epsilon,N_iter,norm_yT,abs_zT,norm_v\n";
    for (const auto& r : rows)
        out << fmt(r.epsilon, 6) << "," << r.n_iter << "," << fmt(r.norm_yT, 6) << ","
            << fmt(r.abs_zT, 6) << "," << fmt(r.norm_v, 6) << "\n";
}

} // namespace odeheat
