#pragma once

#include "odeheat/problem.hpp"

namespace odeheat {

/// Result of an adjoint solve: the backward trajectory (phi, rho) and the
/// masked trace of phi on omega x (0,T) used to build controls.
///
/// In discrete mode the trace is the exact transpose image of the
/// control-to-final-state map, which differs from the nodal trajectory values
/// by the quadrature factors of the stepping scheme; in continuous mode it is
/// simply the masked nodal values.
struct AdjointSolution {
    Trajectory trajectory;
    SpaceTimeField control_trace;
};

/// Solve the forward system
///   y_t - y_xx + a y + b z = 1_omega v,   z' + c z - kappa y_x(0,t) = 0,
///   y(0,t) = mu z(t),                     y_x(L,t) per config.right_bc,
/// from (y0, z0) with the theta-scheme. Pass an empty field for v to run
/// without a source. Each step solves one bordered tridiagonal system in the
/// (Nx+1)+1 unknowns, so the stiff boundary coupling is treated monolithically.
Trajectory solve_forward(const SpaceTimeField& v, const HState& initial,
                         const ProblemData& data, const SpaceTimeGrid& grid,
                         const SolverConfig& config);

/// Solve the adjoint (backward) system from final data (phi_T, rho_T); see
/// AdjointMode for the two discretizations. The continuous form is
///   -phi_t - phi_xx + a phi = 0,
///   -rho' + c rho - kappa phi_x(0,t) + (kappa/mu) integral b phi dx = 0,
///   phi(0,t) = mu rho(t), phi_x(L,t) = 0.
AdjointSolution solve_adjoint_full(const HState& final_data, const ProblemData& data,
                                   const SpaceTimeGrid& grid, const SolverConfig& config);

/// Adjoint trajectory only.
Trajectory solve_adjoint(const HState& final_data, const ProblemData& data,
                         const SpaceTimeGrid& grid, const SolverConfig& config);

/// Final state of the source-free forward solve from (y0, z0).
HState uncontrolled_final(const HState& initial, const ProblemData& data,
                          const SpaceTimeGrid& grid, const SolverConfig& config);

} // namespace odeheat
