#include "odeheat/extension.hpp"

#include <algorithm>
#include <cmath>

namespace odeheat {

ExtensionConfig::ExtensionConfig(double ell, SpaceTimeGrid extended_grid, ControlRegion omega)
    : ell_(ell), extended_(std::move(extended_grid)), omega_(std::move(omega)) {
    if (!(ell > 0.0 && ell < extended_.length()))
        throw std::invalid_argument("ExtensionConfig: requires 0 < ell < L");
    const double ratio = ell / extended_.dx();
    interface_ = static_cast<int>(std::lround(ratio));
    if (std::abs(ratio - static_cast<double>(interface_)) > 1e-9)
        throw std::invalid_argument("ExtensionConfig: ell must fall on a grid node");
    if (interface_ < 4 || interface_ > extended_.num_space_intervals() - 1)
        throw std::invalid_argument("ExtensionConfig: ell too close to the domain ends");
    if (omega_.lower() < ell)
        throw std::invalid_argument("ExtensionConfig: omega must lie inside (ell, L)");
}

SpaceTimeGrid ExtensionConfig::restricted_grid() const {
    return SpaceTimeGrid(ell_, extended_.final_time(), interface_, extended_.num_time_steps());
}

std::vector<double> extend_initial(const std::vector<double>& y0, const ExtensionConfig& ext) {
    const int ni = ext.interface_node();
    if (static_cast<int>(y0.size()) != ni + 1)
        throw std::invalid_argument("extend_initial: data does not conform to the (0, ell) sub-grid");
    detail::require_finite(y0, "extend_initial");
    std::vector<double> out(static_cast<std::size_t>(ext.extended_grid().num_nodes()),
                            y0.back());
    std::copy(y0.begin(), y0.end(), out.begin());
    return out;
}

BoundaryControl extract_trace_control(const Trajectory& traj, const ExtensionConfig& ext) {
    const int ni = ext.interface_node();
    const SpaceTimeGrid& grid = ext.extended_grid();
    if (traj.num_levels() != grid.num_levels())
        throw std::invalid_argument("extract_trace_control: trajectory does not conform to grid");
    BoundaryControl bc;
    bc.u.resize(static_cast<std::size_t>(grid.num_levels()));
    for (int n = 0; n < grid.num_levels(); ++n) {
        const auto& y = traj.states[static_cast<std::size_t>(n)].y;
        bc.u[static_cast<std::size_t>(n)] =
            (y[static_cast<std::size_t>(ni + 1)] - y[static_cast<std::size_t>(ni - 1)]) /
            (2.0 * grid.dx());
    }
    return bc;
}

VerificationNorms verify_boundary_control(const BoundaryControl& control, const HState& initial,
                                          const ProblemData& restricted_data,
                                          const SpaceTimeGrid& restricted_grid,
                                          const SolverConfig& config) {
    detail::require_conforms(initial, restricted_grid, "verify_boundary_control");
    const double mu = restricted_data.coupling.mu;
    if (std::abs(initial.y.front() - mu * initial.z) > 1e-10 * std::max(1.0, std::abs(mu * initial.z)))
        throw std::invalid_argument(
            "verify_boundary_control: incompatible data, requires y0(0) = mu z0");

    SolverConfig cfg = config;
    cfg.right_bc = RightBoundary::prescribed(control.u);
    SpaceTimeField none;
    const HState final_state =
        solve_forward(none, initial, restricted_data, restricted_grid, cfg).final_state();
    return VerificationNorms{field_l2_norm(final_state.y, restricted_grid),
                             std::abs(final_state.z),
                             time_l2_norm(control.u, restricted_grid)};
}

} // namespace odeheat
