#pragma once

#include "odeheat/solver.hpp"

namespace odeheat {

/// Parameters of the penalized control computation: penalty epsilon, relative
/// stopping tolerance for the conjugate gradient iteration, iteration cap and
/// the initial guess for the adjoint final data.
struct HumConfig {
    double epsilon;
    double tol;
    int max_iter = 500;
    HState initial_guess;

    HumConfig(double epsilon_, double tol_, int max_iter_, HState f0)
        : epsilon(epsilon_), tol(tol_), max_iter(max_iter_), initial_guess(std::move(f0)) {
        if (!(epsilon > 0.0)) throw std::invalid_argument("HumConfig: epsilon must be > 0");
        if (!(tol > 0.0)) throw std::invalid_argument("HumConfig: tol must be > 0");
        if (max_iter < 1) throw std::invalid_argument("HumConfig: max_iter must be >= 1");
    }
};

/// Output of the penalized control computation.
struct HumResult {
    SpaceTimeField control;              ///< v on omega x (0,T), zero off the mask
    HState minimizer;                    ///< adjoint final data at the last iterate
    HState final_state;                  ///< controlled state at time T
    int iterations = 0;
    std::vector<double> residual_history; ///< weighted norm of the CG residual per iterate
    bool converged = true;               ///< false when max_iter was hit

    double norm_yT = 0.0;   ///< L2(0,L) norm of the controlled field at T
    double abs_zT = 0.0;    ///< |z(T)|
    double norm_control = 0.0; ///< L2(omega x (0,T)) norm of the control
};

/// Controllability operator: the final state of the forward solve sourced by
/// the masked adjoint solution of fT. Linear in fT; in discrete-adjoint mode
/// it is exactly self-adjoint and positive semidefinite in the weighted state
/// inner product.
HState gramian_apply(const HState& fT, const ProblemData& data, const SpaceTimeGrid& grid,
                     const SolverConfig& config);

/// Penalized control cost: 1/2 |v|^2 over omega x (0,T) plus 1/(2 eps) times
/// the squared weighted norm of the final state reached from (y0, z0) under v.
double control_cost(const SpaceTimeField& v, const HState& initial, const ProblemData& data,
                    const SpaceTimeGrid& grid, const SolverConfig& config, double epsilon);

/// Dual cost over adjoint final data fT: 1/2 |phi|^2 over omega x (0,T)
/// + eps/2 |fT|^2 + <(y0,z0), (phi(0), rho(0))>, with (phi, rho) the adjoint
/// solution of fT. Its gradient is eps fT + Gramian(fT) + uncontrolled final.
double dual_cost(const HState& fT, const HState& initial, const ProblemData& data,
                 const SpaceTimeGrid& grid, const SolverConfig& config, double epsilon);

/// Conjugate gradient solve of (Gramian + eps I) fT = -(uncontrolled final),
/// iterating entirely through adjoint/forward solves. Returns the control
/// built from the adjoint solve at the final iterate together with the
/// controlled final state and norms.
HumResult hum_cg(const HState& initial, const ProblemData& data, const SpaceTimeGrid& grid,
                 const SolverConfig& config, const HumConfig& hum);

/// Residual of the duality identity
///   integral over omega_T of v phi  =  <(y(T), z(T)), fT> - <(y0, z0), (phi(0), rho(0))>
/// evaluated with this module's solvers and quadrature (left minus right).
/// Machine-zero in discrete-adjoint mode; O(dx + dt) in continuous mode.
double duality_residual(const SpaceTimeField& v, const HState& initial, const HState& fT,
                        const ProblemData& data, const SpaceTimeGrid& grid,
                        const SolverConfig& config);

/// Ratio of the adjoint solution's initial energy to its energy on
/// omega x (0,T); a numerical lower bound for the observability constant.
/// Throws std::domain_error when the denominator vanishes.
double observability_ratio(const HState& fT, const ProblemData& data, const SpaceTimeGrid& grid,
                           const SolverConfig& config);

} // namespace odeheat
