#include "odeheat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "odeheat/bordered.hpp"

// Time stepping
// -------------
// Unknowns per level: the Nx+1 field nodes plus the scalar z. Each theta-step
// n -> n+1 solves one bordered tridiagonal system
//
//   M^{n+1} U^{n+1} = K^n U^n + s^{n+1}
//
// where M carries the implicit part, K the explicit part and s the
// theta-weighted sources. Row 0 is the algebraic coupling y_0 = mu z, imposed
// exactly at the new level (its K row is zero). The field rows use the central
// second-difference stencil with potential a and coupling term b z; the right
// boundary uses a ghost node, which turns a prescribed flux u into the extra
// source 2u/dx in the last field row. The z row carries the one-sided
// second-order flux stencil (-3 y_0 + 4 y_1 - y_2)/(2 dx).
//
// The discrete adjoint propagates final data through the exact transposes of
// these steps in the weighted state inner product: with H the diagonal of
// quadrature weights, each backward step solves (M^m)^T lam^m = H V^m and sets
// V^{m-1} = H^{-1} (K^{m-1})^T lam^m. The same multipliers give the adjoint
// trace on omega that makes control-to-final-state and trace extraction exact
// transposes of each other:
//
//   trace_j^m = (theta lam_j^m + (1-theta) lam_j^{m+1}) / (tau_m q_j)
//
// on masked nodes, where tau are the time weights and q the omega weights.
// The continuous adjoint instead discretizes the backward system directly
// with the same stencils and reads the trace off the nodal values; the two
// modes agree to O(dx + dt).

namespace odeheat {

namespace {

struct StepContext {
    int nx;
    double dx, dt, theta;
    double mu, kappa;
    const ProblemData* data;

    double a_at(int m, int j) const { return data->a.at(m, j); }
    double b_at(int m, int j) const { return data->b.at(m, j); }
    double c_at(int m) const { return data->c[static_cast<std::size_t>(m)]; }
};

StepContext make_context(const ProblemData& data, const SpaceTimeGrid& grid,
                         const SolverConfig& config) {
    if (!(config.theta >= 0.5 && config.theta <= 1.0))
        throw std::invalid_argument("SolverConfig: theta must lie in [0.5, 1]");
    return StepContext{grid.num_space_intervals(), grid.dx(), grid.dt(), config.theta,
                       data.coupling.mu, data.coupling.kappa, &data};
}

// Implicit step matrix at time level m (used by the step m-1 -> m).
void assemble_step_matrix(const StepContext& c, int m, BorderedSolver& s) {
    const double th = c.theta;
    const double idt = 1.0 / c.dt;
    const double idx2 = 1.0 / (c.dx * c.dx);
    const int nx = c.nx;

    s.diag[0] = 1.0;
    s.sup[0] = 0.0;
    s.col[0] = -c.mu;
    for (int j = 1; j < nx; ++j) {
        s.sub[static_cast<std::size_t>(j)] = -th * idx2;
        s.diag[static_cast<std::size_t>(j)] = idt + th * (2.0 * idx2 + c.a_at(m, j));
        s.sup[static_cast<std::size_t>(j)] = -th * idx2;
        s.col[static_cast<std::size_t>(j)] = th * c.b_at(m, j);
    }
    s.sub[static_cast<std::size_t>(nx)] = -2.0 * th * idx2;
    s.diag[static_cast<std::size_t>(nx)] = idt + th * (2.0 * idx2 + c.a_at(m, nx));
    s.col[static_cast<std::size_t>(nx)] = th * c.b_at(m, nx);

    std::fill(s.row.begin(), s.row.end(), 0.0);
    const double fl = th * c.kappa / (2.0 * c.dx);
    s.row[0] = 3.0 * fl;
    s.row[1] = -4.0 * fl;
    s.row[2] = fl;
    s.corner = idt + th * c.c_at(m);
}

// Transpose of the step matrix at level m: sub/sup swap, the z row and z
// column trade places.
void assemble_step_matrix_transpose(const StepContext& c, int m, BorderedSolver& s) {
    const double th = c.theta;
    const double idt = 1.0 / c.dt;
    const double idx2 = 1.0 / (c.dx * c.dx);
    const int nx = c.nx;

    s.diag[0] = 1.0;
    s.sub[1] = 0.0; // transpose of sup[0]
    for (int j = 1; j < nx; ++j) {
        s.diag[static_cast<std::size_t>(j)] = idt + th * (2.0 * idx2 + c.a_at(m, j));
        s.sup[static_cast<std::size_t>(j - 1)] = -th * idx2; // transpose of sub[j]
        if (j >= 2) s.sub[static_cast<std::size_t>(j)] = -th * idx2;
    }
    s.diag[static_cast<std::size_t>(nx)] = idt + th * (2.0 * idx2 + c.a_at(m, nx));
    s.sup[static_cast<std::size_t>(nx - 1)] = -2.0 * th * idx2; // transpose of sub[nx]
    s.sub[static_cast<std::size_t>(nx)] = -th * idx2;           // transpose of sup[nx-1]

    std::fill(s.col.begin(), s.col.end(), 0.0);
    const double fl = th * c.kappa / (2.0 * c.dx);
    s.col[0] = 3.0 * fl;
    s.col[1] = -4.0 * fl;
    s.col[2] = fl;

    s.row[0] = -c.mu;
    for (int j = 1; j <= nx; ++j)
        s.row[static_cast<std::size_t>(j)] = th * c.b_at(m, j);
    s.corner = idt + th * c.c_at(m);
}

// Explicit side of the forward step: out = K^n u.
void apply_forward_explicit(const StepContext& c, int n, const HState& u,
                            std::vector<double>& out, double& out_z) {
    const double ex = 1.0 - c.theta;
    const double idt = 1.0 / c.dt;
    const double idx2 = 1.0 / (c.dx * c.dx);
    const int nx = c.nx;
    const auto& y = u.y;

    out[0] = 0.0;
    for (int j = 1; j < nx; ++j) {
        const double lap = (-y[static_cast<std::size_t>(j - 1)] + 2.0 * y[static_cast<std::size_t>(j)] -
                            y[static_cast<std::size_t>(j + 1)]) * idx2;
        out[static_cast<std::size_t>(j)] =
            y[static_cast<std::size_t>(j)] * idt -
            ex * (lap + c.a_at(n, j) * y[static_cast<std::size_t>(j)] + c.b_at(n, j) * u.z);
    }
    const double lapn =
        (-2.0 * y[static_cast<std::size_t>(nx - 1)] + 2.0 * y[static_cast<std::size_t>(nx)]) * idx2;
    out[static_cast<std::size_t>(nx)] =
        y[static_cast<std::size_t>(nx)] * idt -
        ex * (lapn + c.a_at(n, nx) * y[static_cast<std::size_t>(nx)] + c.b_at(n, nx) * u.z);

    const double flux0 = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * c.dx);
    out_z = u.z * idt - ex * (c.c_at(n) * u.z - c.kappa * flux0);
}

// Transpose of the explicit side: out = (K^n)^T lam. Column 0 of K is empty
// for theta = 1 because the constrained node has no evolution row.
void apply_forward_explicit_transpose(const StepContext& c, int n,
                                      const std::vector<double>& lam, double lam_z,
                                      std::vector<double>& out, double& out_z) {
    const double ex = 1.0 - c.theta;
    const double idt = 1.0 / c.dt;
    const double idx2 = 1.0 / (c.dx * c.dx);
    const int nx = c.nx;
    const double fl = ex * c.kappa / (2.0 * c.dx);

    out[0] = ex * idx2 * lam[1] - 3.0 * fl * lam_z;
    for (int j = 1; j <= nx; ++j) {
        double acc = (idt - ex * (2.0 * idx2 + c.a_at(n, j))) * lam[static_cast<std::size_t>(j)];
        if (j >= 2)
            acc += ex * idx2 * lam[static_cast<std::size_t>(j - 1)];
        if (j + 1 < nx)
            acc += ex * idx2 * lam[static_cast<std::size_t>(j + 1)];
        else if (j + 1 == nx)
            acc += 2.0 * ex * idx2 * lam[static_cast<std::size_t>(nx)]; // ghost row weighs its neighbor twice
        if (j == 1) acc += 4.0 * fl * lam_z;
        if (j == 2) acc -= fl * lam_z;
        out[static_cast<std::size_t>(j)] = acc;
    }
    out_z = (idt - ex * c.c_at(n)) * lam_z;
    for (int j = 1; j <= nx; ++j)
        out_z -= ex * c.b_at(n, j) * lam[static_cast<std::size_t>(j)];
}

void require_inputs(const SpaceTimeField& v, const HState& state, const ProblemData& data,
                    const SpaceTimeGrid& grid, const SolverConfig& config, const char* what) {
    detail::require_conforms(state, grid, what);
    if (!v.empty()) {
        if (!v.conforms(grid))
            throw std::invalid_argument(std::string(what) + ": source field does not conform to grid");
        detail::require_finite(v.values(), what);
    }
    if (config.right_bc.kind == RightBoundary::Kind::PrescribedFlux) {
        if (static_cast<int>(config.right_bc.flux.size()) != grid.num_levels())
            throw std::invalid_argument(std::string(what) +
                                        ": prescribed flux must have one value per time level");
        detail::require_finite(config.right_bc.flux, what);
    }
    if (!data.a.conforms(grid) || !data.b.conforms(grid) ||
        static_cast<int>(data.c.size()) != grid.num_levels())
        throw std::invalid_argument(std::string(what) + ": problem data does not conform to grid");
}

} // namespace

Trajectory solve_forward(const SpaceTimeField& v, const HState& initial,
                         const ProblemData& data, const SpaceTimeGrid& grid,
                         const SolverConfig& config) {
    require_inputs(v, initial, data, grid, config, "solve_forward");
    const StepContext c = make_context(data, grid, config);
    const int nx = c.nx;
    const int nt = grid.num_time_steps();
    const auto& mask = data.region.mask();
    const bool flux_bc = config.right_bc.kind == RightBoundary::Kind::PrescribedFlux;

    Trajectory traj;
    traj.states.reserve(static_cast<std::size_t>(nt + 1));
    traj.states.push_back(initial);

    BorderedSolver step(nx + 1);
    std::vector<double> rhs(static_cast<std::size_t>(nx + 1));
    HState next;
    next.y.resize(static_cast<std::size_t>(nx + 1));

    for (int n = 0; n < nt; ++n) {
        const HState& cur = traj.states.back();
        double rz = 0.0;
        apply_forward_explicit(c, n, cur, rhs, rz);

        if (!v.empty()) {
            for (int j = 1; j <= nx; ++j)
                rhs[static_cast<std::size_t>(j)] +=
                    mask[static_cast<std::size_t>(j)] *
                    (c.theta * v.at(n + 1, j) + (1.0 - c.theta) * v.at(n, j));
        }
        if (flux_bc) {
            const auto& u = config.right_bc.flux;
            rhs[static_cast<std::size_t>(nx)] +=
                (2.0 / c.dx) * (c.theta * u[static_cast<std::size_t>(n + 1)] +
                                (1.0 - c.theta) * u[static_cast<std::size_t>(n)]);
        }

        assemble_step_matrix(c, n + 1, step);
        step.factor();
        step.solve(rhs, rz, next.y, next.z);
        traj.states.push_back(next);
    }
    return traj;
}

namespace {

AdjointSolution solve_adjoint_discrete(const HState& final_data, const ProblemData& data,
                                       const SpaceTimeGrid& grid, const SolverConfig& config) {
    const StepContext c = make_context(data, grid, config);
    const int nx = c.nx;
    const int nt = grid.num_time_steps();
    const auto& w = grid.space_quadrature();
    const auto& tau = grid.time_quadrature();
    const auto& q = data.region.quadrature();
    const double state_weight = data.coupling.weight();

    AdjointSolution out;
    out.trajectory.states.assign(static_cast<std::size_t>(nt + 1), HState());
    out.trajectory.states[static_cast<std::size_t>(nt)] = final_data;
    out.control_trace = SpaceTimeField(grid);

    BorderedSolver step(nx + 1);
    std::vector<double> rhs(static_cast<std::size_t>(nx + 1));
    std::vector<double> lam(static_cast<std::size_t>(nx + 1));
    double lam_z = 0.0;

    for (int m = nt; m >= 1; --m) {
        const HState& vm = out.trajectory.states[static_cast<std::size_t>(m)];

        // (M^m)^T lam^m = H V^m
        for (int j = 0; j <= nx; ++j)
            rhs[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(j)] * vm.y[static_cast<std::size_t>(j)];
        assemble_step_matrix_transpose(c, m, step);
        step.factor();
        step.solve(rhs, state_weight * vm.z, lam, lam_z);

        // Work-consistent trace on omega. The constrained node takes no source,
        // so its trace stays zero.
        for (int j = std::max(1, data.region.first_node()); j <= data.region.last_node(); ++j) {
            const double lj = lam[static_cast<std::size_t>(j)];
            out.control_trace.at(m, j) +=
                c.theta * lj / (tau[static_cast<std::size_t>(m)] * q[static_cast<std::size_t>(j)]);
            if (c.theta < 1.0)
                out.control_trace.at(m - 1, j) +=
                    (1.0 - c.theta) * lj / (tau[static_cast<std::size_t>(m - 1)] * q[static_cast<std::size_t>(j)]);
        }

        // V^{m-1} = H^{-1} (K^{m-1})^T lam^m
        HState prev;
        prev.y.resize(static_cast<std::size_t>(nx + 1));
        double kz = 0.0;
        apply_forward_explicit_transpose(c, m - 1, lam, lam_z, prev.y, kz);
        for (int j = 0; j <= nx; ++j)
            prev.y[static_cast<std::size_t>(j)] /= w[static_cast<std::size_t>(j)];
        prev.z = kz / state_weight;
        out.trajectory.states[static_cast<std::size_t>(m - 1)] = std::move(prev);
    }
    return out;
}

AdjointSolution solve_adjoint_continuous(const HState& final_data, const ProblemData& data,
                                         const SpaceTimeGrid& grid, const SolverConfig& config) {
    const StepContext c = make_context(data, grid, config);
    const int nx = c.nx;
    const int nt = grid.num_time_steps();
    const double th = c.theta;
    const double ex = 1.0 - th;
    const double idt = 1.0 / c.dt;
    const double idx2 = 1.0 / (c.dx * c.dx);
    const auto& w = grid.space_quadrature();
    const auto& mask = data.region.mask();

    AdjointSolution out;
    out.trajectory.states.assign(static_cast<std::size_t>(nt + 1), HState());
    out.trajectory.states[static_cast<std::size_t>(nt)] = final_data;
    out.control_trace = SpaceTimeField(grid);

    BorderedSolver step(nx + 1);
    std::vector<double> rhs(static_cast<std::size_t>(nx + 1));

    auto record_trace = [&](int m, const HState& s) {
        for (int j = data.region.first_node(); j <= data.region.last_node(); ++j)
            out.control_trace.at(m, j) =
                mask[static_cast<std::size_t>(j)] * s.y[static_cast<std::size_t>(j)];
    };
    record_trace(nt, final_data);

    for (int m = nt; m >= 1; --m) {
        const HState& vm = out.trajectory.states[static_cast<std::size_t>(m)];
        const auto& phi = vm.y;

        // Explicit side at level m.
        rhs[0] = 0.0;
        for (int j = 1; j < nx; ++j) {
            const double lap = (phi[static_cast<std::size_t>(j - 1)] - 2.0 * phi[static_cast<std::size_t>(j)] +
                                phi[static_cast<std::size_t>(j + 1)]) * idx2;
            rhs[static_cast<std::size_t>(j)] =
                phi[static_cast<std::size_t>(j)] * idt +
                ex * (lap - c.a_at(m, j) * phi[static_cast<std::size_t>(j)]);
        }
        const double lapn =
            (2.0 * phi[static_cast<std::size_t>(nx - 1)] - 2.0 * phi[static_cast<std::size_t>(nx)]) * idx2;
        rhs[static_cast<std::size_t>(nx)] =
            phi[static_cast<std::size_t>(nx)] * idt + ex * (lapn - c.a_at(m, nx) * phi[static_cast<std::size_t>(nx)]);

        double nonlocal_m = 0.0;
        for (int j = 0; j <= nx; ++j)
            nonlocal_m += w[static_cast<std::size_t>(j)] * c.b_at(m, j) * phi[static_cast<std::size_t>(j)];
        const double flux0 = (-3.0 * phi[0] + 4.0 * phi[1] - phi[2]) / (2.0 * c.dx);
        const double rz = vm.z * idt + ex * (-c.c_at(m) * vm.z + c.kappa * flux0 -
                                             (c.kappa / c.mu) * nonlocal_m);

        // Implicit matrix at level m-1.
        step.diag[0] = 1.0;
        step.sup[0] = 0.0;
        std::fill(step.col.begin(), step.col.end(), 0.0);
        step.col[0] = -c.mu;
        for (int j = 1; j < nx; ++j) {
            step.sub[static_cast<std::size_t>(j)] = -th * idx2;
            step.diag[static_cast<std::size_t>(j)] = idt + th * (2.0 * idx2 + c.a_at(m - 1, j));
            step.sup[static_cast<std::size_t>(j)] = -th * idx2;
        }
        step.sub[static_cast<std::size_t>(nx)] = -2.0 * th * idx2;
        step.diag[static_cast<std::size_t>(nx)] = idt + th * (2.0 * idx2 + c.a_at(m - 1, nx));

        const double fl = th * c.kappa / (2.0 * c.dx);
        for (int j = 0; j <= nx; ++j)
            step.row[static_cast<std::size_t>(j)] =
                th * (c.kappa / c.mu) * w[static_cast<std::size_t>(j)] * c.b_at(m - 1, j);
        step.row[0] += 3.0 * fl;
        step.row[1] += -4.0 * fl;
        step.row[2] += fl;
        step.corner = idt + th * c.c_at(m - 1);

        step.factor();
        HState prev;
        prev.y.resize(static_cast<std::size_t>(nx + 1));
        step.solve(rhs, rz, prev.y, prev.z);
        out.trajectory.states[static_cast<std::size_t>(m - 1)] = std::move(prev);
        record_trace(m - 1, out.trajectory.states[static_cast<std::size_t>(m - 1)]);
    }
    return out;
}

} // namespace

AdjointSolution solve_adjoint_full(const HState& final_data, const ProblemData& data,
                                   const SpaceTimeGrid& grid, const SolverConfig& config) {
    SpaceTimeField none;
    require_inputs(none, final_data, data, grid, config, "solve_adjoint");
    if (config.adjoint_mode == AdjointMode::Discrete)
        return solve_adjoint_discrete(final_data, data, grid, config);
    return solve_adjoint_continuous(final_data, data, grid, config);
}

Trajectory solve_adjoint(const HState& final_data, const ProblemData& data,
                         const SpaceTimeGrid& grid, const SolverConfig& config) {
    return solve_adjoint_full(final_data, data, grid, config).trajectory;
}

HState uncontrolled_final(const HState& initial, const ProblemData& data,
                          const SpaceTimeGrid& grid, const SolverConfig& config) {
    SpaceTimeField none;
    return solve_forward(none, initial, data, grid, config).final_state();
}

} // namespace odeheat
