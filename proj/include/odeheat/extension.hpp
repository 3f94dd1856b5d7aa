#pragma once

#include "odeheat/hum.hpp"

namespace odeheat {

/// Geometry of the domain-extension construction: the original interval is
/// (0, ell), the distributed-control problem lives on (0, L) with control
/// region omega inside (ell, L), and ell falls exactly on a node of the
/// extended grid.
class ExtensionConfig {
public:
    ExtensionConfig(double ell, SpaceTimeGrid extended_grid, ControlRegion omega);

    double ell() const { return ell_; }
    const SpaceTimeGrid& extended_grid() const { return extended_; }
    const ControlRegion& omega() const { return omega_; }
    /// Index of the node at x = ell on the extended grid.
    int interface_node() const { return interface_; }
    /// Grid of the original interval (0, ell), sharing dx and the time levels.
    SpaceTimeGrid restricted_grid() const;

private:
    double ell_;
    SpaceTimeGrid extended_;
    ControlRegion omega_;
    int interface_;
};

/// Extend nodal data from (0, ell) to (0, L) by constant continuation of the
/// value at ell; linear in the input and the identity on shared nodes.
std::vector<double> extend_initial(const std::vector<double>& y0, const ExtensionConfig& ext);

/// Flux trace at x = ell, one value per time level.
struct BoundaryControl {
    std::vector<double> u;
};

/// Read the boundary control off an extended-domain trajectory: centered
/// difference of the field across the node at ell.
BoundaryControl extract_trace_control(const Trajectory& traj, const ExtensionConfig& ext);

/// Norms reported by the (0, ell) verification re-solve.
struct VerificationNorms {
    double norm_yT;   ///< L2(0, ell) norm of the field at T
    double abs_zT;    ///< |z(T)|
    double norm_u;    ///< L2(0, T) norm of the boundary control
};

/// Re-solve the original system on (0, ell) with the extracted flux as the
/// prescribed right boundary condition and report the final norms. Requires
/// the compatibility condition y0(0) = mu z0.
VerificationNorms verify_boundary_control(const BoundaryControl& control, const HState& initial,
                                          const ProblemData& restricted_data,
                                          const SpaceTimeGrid& restricted_grid,
                                          const SolverConfig& config);

} // namespace odeheat
