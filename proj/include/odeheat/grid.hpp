#pragma once

#include <stdexcept>
#include <vector>

namespace odeheat {

/// Uniform space-time discretization of (0,L) x (0,T).
///
/// Nodes x_j = j*dx for j = 0..Nx, time levels t_n = n*dt for n = 0..Nt.
/// Spatial integrals use composite trapezoid weights (dx/2 at the endpoints,
/// dx inside); time integrals use the analogous weights built from dt.
class SpaceTimeGrid {
public:
    SpaceTimeGrid(double L, double T, int Nx, int Nt);

    double length() const { return L_; }
    double final_time() const { return T_; }
    int num_space_intervals() const { return Nx_; }
    int num_time_steps() const { return Nt_; }
    int num_nodes() const { return Nx_ + 1; }
    int num_levels() const { return Nt_ + 1; }
    double dx() const { return dx_; }
    double dt() const { return dt_; }

    double node(int j) const { return static_cast<double>(j) * dx_; }
    double level(int n) const { return static_cast<double>(n) * dt_; }

    /// Per-node trapezoid weights for integrals over (0,L).
    const std::vector<double>& space_quadrature() const { return space_weights_; }
    /// Per-level trapezoid weights for integrals over (0,T).
    const std::vector<double>& time_quadrature() const { return time_weights_; }

private:
    double L_;
    double T_;
    int Nx_;
    int Nt_;
    double dx_;
    double dt_;
    std::vector<double> space_weights_;
    std::vector<double> time_weights_;
};

/// Coupling coefficients of the ODE-heat system: the Dirichlet coefficient mu
/// in y(0,t) = mu z(t) and the flux coefficient kappa in z' + c z = kappa y_x(0,t).
/// Only the reactive regime mu*kappa > 0 is admitted; the weighted state-space
/// inner product is built from the ratio mu/kappa.
struct Coupling {
    double mu;
    double kappa;

    Coupling(double mu_, double kappa_) : mu(mu_), kappa(kappa_) {
        if (!(mu * kappa > 0.0))
            throw std::invalid_argument("Coupling: requires mu*kappa > 0");
    }

    double weight() const { return mu / kappa; }
};

/// Control region omega = (w0,w1) inside (0,L), realized on the grid as the set
/// of nodes with w0 <= x_j <= w1. Carries a 0/1 node mask and the trapezoid
/// weights of the included subinterval (half weight at the first and last
/// included node), so that integrals over omega of node-aligned constants are
/// exact.
class ControlRegion {
public:
    ControlRegion(double w0, double w1, const SpaceTimeGrid& grid);

    double lower() const { return w0_; }
    double upper() const { return w1_; }
    const std::vector<double>& mask() const { return mask_; }
    /// Quadrature weights for integrals over omega (zero off the mask).
    const std::vector<double>& quadrature() const { return weights_; }
    int first_node() const { return first_; }
    int last_node() const { return last_; }
    bool contains(int j) const { return mask_[static_cast<std::size_t>(j)] != 0.0; }

private:
    double w0_;
    double w1_;
    int first_;
    int last_;
    std::vector<double> mask_;
    std::vector<double> weights_;
};

} // namespace odeheat
