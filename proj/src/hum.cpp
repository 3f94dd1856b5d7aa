#include "odeheat/hum.hpp"

#include <cmath>

namespace odeheat {

namespace {

void axpy(double alpha, const HState& x, HState& y) {
    for (std::size_t j = 0; j < y.y.size(); ++j)
        y.y[j] += alpha * x.y[j];
    y.z += alpha * x.z;
}

// (Gramian + eps I) w together with the adjoint trace of w.
HState operator_apply(const HState& w, double epsilon, const ProblemData& data,
                      const SpaceTimeGrid& grid, const SolverConfig& config) {
    const AdjointSolution adj = solve_adjoint_full(w, data, grid, config);
    HState out = solve_forward(adj.control_trace, HState::zero(grid), data, grid, config)
                     .final_state();
    axpy(epsilon, w, out);
    return out;
}

// eps f + final state of the forward solve driven by f's trace from (y0, z0);
// the gradient of the dual cost, recomputed from scratch.
HState gradient_at(const HState& f, const HState& initial, double epsilon,
                   const ProblemData& data, const SpaceTimeGrid& grid,
                   const SolverConfig& config) {
    const AdjointSolution adj = solve_adjoint_full(f, data, grid, config);
    HState out = solve_forward(adj.control_trace, initial, data, grid, config).final_state();
    axpy(epsilon, f, out);
    return out;
}

} // namespace

HState gramian_apply(const HState& fT, const ProblemData& data, const SpaceTimeGrid& grid,
                     const SolverConfig& config) {
    const AdjointSolution adj = solve_adjoint_full(fT, data, grid, config);
    return solve_forward(adj.control_trace, HState::zero(grid), data, grid, config).final_state();
}

double control_cost(const SpaceTimeField& v, const HState& initial, const ProblemData& data,
                    const SpaceTimeGrid& grid, const SolverConfig& config, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("control_cost: epsilon must be > 0");
    const HState final_state = solve_forward(v, initial, data, grid, config).final_state();
    const double terminal = inner_product(final_state, final_state, data.coupling, grid);
    const double effort = v.empty() ? 0.0 : control_inner_product(v, v, data.region, grid);
    return 0.5 * effort + terminal / (2.0 * epsilon);
}

double dual_cost(const HState& fT, const HState& initial, const ProblemData& data,
                 const SpaceTimeGrid& grid, const SolverConfig& config, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("dual_cost: epsilon must be > 0");
    const AdjointSolution adj = solve_adjoint_full(fT, data, grid, config);
    const double effort = control_inner_product(adj.control_trace, adj.control_trace,
                                                data.region, grid);
    const double penalty = inner_product(fT, fT, data.coupling, grid);
    const double pairing = inner_product(initial, adj.trajectory.initial(), data.coupling, grid);
    return 0.5 * effort + 0.5 * epsilon * penalty + pairing;
}

HumResult hum_cg(const HState& initial, const ProblemData& data, const SpaceTimeGrid& grid,
                 const SolverConfig& config, const HumConfig& hum) {
    detail::require_conforms(initial, grid, "hum_cg");
    detail::require_conforms(hum.initial_guess, grid, "hum_cg");
    const double eps = hum.epsilon;
    const Coupling cpl = data.coupling;

    auto finish = [&](HState f, int iterations, bool converged,
                      std::vector<double> history) {
        HumResult r;
        const AdjointSolution adj = solve_adjoint_full(f, data, grid, config);
        r.control = adj.control_trace;
        r.minimizer = std::move(f);
        r.final_state = solve_forward(r.control, initial, data, grid, config).final_state();
        r.iterations = iterations;
        r.converged = converged;
        r.residual_history = std::move(history);
        r.norm_yT = field_l2_norm(r.final_state.y, grid);
        r.abs_zT = std::abs(r.final_state.z);
        r.norm_control = control_l2_norm(r.control, data.region, grid);
        return r;
    };

    HState f = hum.initial_guess;
    HState g = gradient_at(f, initial, eps, data, grid, config);
    double gnorm2 = inner_product(g, g, cpl, grid);
    const double g0norm = std::sqrt(gnorm2);
    std::vector<double> history{g0norm};

    if (g0norm == 0.0)
        return finish(std::move(f), 0, true, std::move(history));
    const double f0norm = h_norm(f, cpl, grid);
    if (f0norm > 0.0 && g0norm / f0norm <= hum.tol)
        return finish(std::move(f), 0, true, std::move(history));

    HState w = g;
    for (int k = 0; k < hum.max_iter; ++k) {
        const HState gbar = operator_apply(w, eps, data, grid, config);
        const double denom = inner_product(gbar, w, cpl, grid);
        if (!(denom > 0.0))
            throw std::runtime_error(
                "hum_cg: <Aw, w> <= 0; operator lost positive definiteness "
                "(continuous-adjoint discretization error)");
        const double rho = gnorm2 / denom;
        axpy(-rho, w, f);
        axpy(-rho, gbar, g);

        // Recurrence drift guard: rebuild the gradient from scratch now and
        // then and swap it in if it has wandered.
        if ((k + 1) % 25 == 0) {
            const HState gtrue = gradient_at(f, initial, eps, data, grid, config);
            HState diff = gtrue;
            axpy(-1.0, g, diff);
            const double scale = h_norm(gtrue, cpl, grid);
            if (scale > 0.0 && h_norm(diff, cpl, grid) / scale > 1e-8)
                g = gtrue;
        }

        const double newnorm2 = inner_product(g, g, cpl, grid);
        history.push_back(std::sqrt(newnorm2));
        if (std::sqrt(newnorm2) <= hum.tol * g0norm)
            return finish(std::move(f), k + 1, true, std::move(history));

        const double gamma = newnorm2 / gnorm2;
        HState wnext = g;
        axpy(gamma, w, wnext);
        w = std::move(wnext);
        gnorm2 = newnorm2;
    }
    return finish(std::move(f), hum.max_iter, false, std::move(history));
}

double duality_residual(const SpaceTimeField& v, const HState& initial, const HState& fT,
                        const ProblemData& data, const SpaceTimeGrid& grid,
                        const SolverConfig& config) {
    const AdjointSolution adj = solve_adjoint_full(fT, data, grid, config);
    const double lhs = control_inner_product(v, adj.control_trace, data.region, grid);
    const HState final_state = solve_forward(v, initial, data, grid, config).final_state();
    const double rhs = inner_product(final_state, fT, data.coupling, grid) -
                       inner_product(initial, adj.trajectory.initial(), data.coupling, grid);
    return lhs - rhs;
}

double observability_ratio(const HState& fT, const ProblemData& data, const SpaceTimeGrid& grid,
                           const SolverConfig& config) {
    const AdjointSolution adj = solve_adjoint_full(fT, data, grid, config);
    const double denom = control_inner_product(adj.control_trace, adj.control_trace,
                                               data.region, grid);
    if (denom < 1e-300)
        throw std::domain_error("observability_ratio: adjoint energy on omega vanishes");
    const HState& at0 = adj.trajectory.initial();
    const double num = inner_product(at0, at0, data.coupling, grid);
    return num / denom;
}

} // namespace odeheat
