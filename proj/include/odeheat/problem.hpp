#pragma once

#include <functional>
#include <vector>

#include "odeheat/grid.hpp"
#include "odeheat/state.hpp"

namespace odeheat {

/// Potentials and coupling data of the ODE-heat system, sampled on the grid:
/// a(x,t) and b(x,t) per (level, node), c(t) per level.
struct ProblemData {
    SpaceTimeField a;
    SpaceTimeField b;
    std::vector<double> c;
    Coupling coupling;
    ControlRegion region;

    ProblemData(SpaceTimeField a_, SpaceTimeField b_, std::vector<double> c_,
                Coupling coupling_, ControlRegion region_, const SpaceTimeGrid& grid);

    /// Sample closed-form potentials at the grid nodes and levels.
    static ProblemData sample(const std::function<double(double, double)>& a_fn,
                              const std::function<double(double, double)>& b_fn,
                              const std::function<double(double)>& c_fn,
                              Coupling coupling, ControlRegion region,
                              const SpaceTimeGrid& grid);

    /// Constant potentials.
    static ProblemData constants(double a_val, double b_val, double c_val,
                                 Coupling coupling, ControlRegion region,
                                 const SpaceTimeGrid& grid);
};

/// Right boundary condition at x = L for the forward solve: homogeneous
/// Neumann, or a prescribed flux y_x(L,t) = u(t) given at the time levels.
struct RightBoundary {
    enum class Kind { NeumannZero, PrescribedFlux };
    Kind kind = Kind::NeumannZero;
    std::vector<double> flux; // Nt+1 entries when prescribed

    static RightBoundary neumann() { return {}; }
    static RightBoundary prescribed(std::vector<double> u) {
        return {Kind::PrescribedFlux, std::move(u)};
    }
};

/// How the adjoint system is discretized.
///
/// Discrete: exact transpose of the assembled forward stepping with respect to
/// the weighted state inner product and the control quadrature, so duality
/// identities hold to rounding and the controllability operator is exactly
/// symmetric.  Continuous: direct theta-scheme discretization of the backward
/// system; consistent with Discrete to O(dx + dt).
enum class AdjointMode { Discrete, Continuous };

/// Time-stepping parameters. theta = 1 is implicit Euler, theta = 0.5 is
/// Crank-Nicolson; anything in [0.5, 1] is unconditionally stable here.
struct SolverConfig {
    double theta = 1.0;
    RightBoundary right_bc = RightBoundary::neumann();
    AdjointMode adjoint_mode = AdjointMode::Discrete;
};

/// Time-indexed discrete solution: one HState per level, t_0 through t_Nt.
struct Trajectory {
    std::vector<HState> states;

    const HState& initial() const { return states.front(); }
    const HState& final_state() const { return states.back(); }
    int num_levels() const { return static_cast<int>(states.size()); }
};

} // namespace odeheat
