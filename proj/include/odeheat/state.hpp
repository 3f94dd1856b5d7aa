#pragma once

#include <vector>

#include "odeheat/grid.hpp"

namespace odeheat {

/// An element (y, z) of the state space L^2(0,L) x R: nodal values of the
/// field component plus the scalar ODE component.
struct HState {
    std::vector<double> y;
    double z = 0.0;

    HState() = default;
    HState(std::vector<double> y_, double z_) : y(std::move(y_)), z(z_) {}

    /// Zero state conforming to the grid.
    static HState zero(const SpaceTimeGrid& grid) {
        return HState(std::vector<double>(static_cast<std::size_t>(grid.num_nodes()), 0.0), 0.0);
    }
    /// Constant state (y == value everywhere, z = zvalue).
    static HState constant(const SpaceTimeGrid& grid, double value, double zvalue) {
        return HState(std::vector<double>(static_cast<std::size_t>(grid.num_nodes()), value), zvalue);
    }

    bool conforms(const SpaceTimeGrid& grid) const {
        return static_cast<int>(y.size()) == grid.num_nodes();
    }
};

/// Dense samples of a space-time function on the grid, one value per
/// (time level, node) pair. Used for potentials, distributed controls and
/// adjoint traces.
class SpaceTimeField {
public:
    SpaceTimeField() = default;
    explicit SpaceTimeField(const SpaceTimeGrid& grid)
        : nodes_(grid.num_nodes()),
          levels_(grid.num_levels()),
          values_(static_cast<std::size_t>(nodes_) * static_cast<std::size_t>(levels_), 0.0) {}

    int num_nodes() const { return nodes_; }
    int num_levels() const { return levels_; }
    bool empty() const { return values_.empty(); }
    bool conforms(const SpaceTimeGrid& grid) const {
        return nodes_ == grid.num_nodes() && levels_ == grid.num_levels();
    }

    double& at(int level, int node) {
        return values_[static_cast<std::size_t>(level) * nodes_ + node];
    }
    double at(int level, int node) const {
        return values_[static_cast<std::size_t>(level) * nodes_ + node];
    }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

private:
    int nodes_ = 0;
    int levels_ = 0;
    std::vector<double> values_;
};

/// Weighted state-space inner product: trapezoid quadrature of a.y*b.y over
/// (0,L) plus (mu/kappa) * a.z * b.z.
double inner_product(const HState& a, const HState& b, const Coupling& coupling,
                     const SpaceTimeGrid& grid);

/// Norm induced by inner_product.
double h_norm(const HState& a, const Coupling& coupling, const SpaceTimeGrid& grid);

/// L^2(0,L) norm of the field component alone (trapezoid quadrature).
double field_l2_norm(const std::vector<double>& y, const SpaceTimeGrid& grid);

/// Inner product on controls over omega x (0,T): trapezoid in time, trapezoid
/// over the masked subinterval in space. Values off the mask are ignored.
double control_inner_product(const SpaceTimeField& u, const SpaceTimeField& v,
                             const ControlRegion& region, const SpaceTimeGrid& grid);

/// L^2(omega x (0,T)) norm of a space-time control array.
double control_l2_norm(const SpaceTimeField& v, const ControlRegion& region,
                       const SpaceTimeGrid& grid);

/// L^2(0,T) norm of per-level scalar samples (trapezoid in time).
double time_l2_norm(const std::vector<double>& u, const SpaceTimeGrid& grid);

namespace detail {
void require_conforms(const HState& s, const SpaceTimeGrid& grid, const char* what);
void require_finite(const std::vector<double>& v, const char* what);
} // namespace detail

} // namespace odeheat
