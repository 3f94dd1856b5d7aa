#include "odeheat/grid.hpp"

#include <cmath>

namespace odeheat {

SpaceTimeGrid::SpaceTimeGrid(double L, double T, int Nx, int Nt)
    : L_(L), T_(T), Nx_(Nx), Nt_(Nt) {
    if (!(L > 0.0) || !std::isfinite(L))
        throw std::invalid_argument("SpaceTimeGrid: L must be positive and finite");
    if (!(T > 0.0) || !std::isfinite(T))
        throw std::invalid_argument("SpaceTimeGrid: T must be positive and finite");
    if (Nx < 4)
        throw std::invalid_argument("SpaceTimeGrid: Nx must be at least 4");
    if (Nt < 2)
        throw std::invalid_argument("SpaceTimeGrid: Nt must be at least 2");

    dx_ = L_ / static_cast<double>(Nx_);
    dt_ = T_ / static_cast<double>(Nt_);

    space_weights_.assign(static_cast<std::size_t>(Nx_ + 1), dx_);
    space_weights_.front() = 0.5 * dx_;
    space_weights_.back() = 0.5 * dx_;

    time_weights_.assign(static_cast<std::size_t>(Nt_ + 1), dt_);
    time_weights_.front() = 0.5 * dt_;
    time_weights_.back() = 0.5 * dt_;
}

ControlRegion::ControlRegion(double w0, double w1, const SpaceTimeGrid& grid)
    : w0_(w0), w1_(w1) {
    if (!(0.0 <= w0 && w0 < w1 && w1 <= grid.length()))
        throw std::invalid_argument("ControlRegion: requires 0 <= w0 < w1 <= L");

    const int n = grid.num_nodes();
    mask_.assign(static_cast<std::size_t>(n), 0.0);
    weights_.assign(static_cast<std::size_t>(n), 0.0);

    // Closed-interval node membership; a small relative slack keeps endpoints
    // that only just miss a node due to rounding.
    const double eps = 1e-12 * grid.length();
    first_ = -1;
    last_ = -1;
    for (int j = 0; j < n; ++j) {
        const double x = grid.node(j);
        if (x >= w0 - eps && x <= w1 + eps) {
            mask_[static_cast<std::size_t>(j)] = 1.0;
            if (first_ < 0) first_ = j;
            last_ = j;
        }
    }
    if (first_ < 0 || last_ == first_)
        throw std::invalid_argument("ControlRegion: omega must contain at least 2 grid nodes");

    // Trapezoid weights of the included subinterval.
    for (int j = first_; j <= last_; ++j)
        weights_[static_cast<std::size_t>(j)] =
            (j == first_ || j == last_) ? 0.5 * grid.dx() : grid.dx();
}

} // namespace odeheat
