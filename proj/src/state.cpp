#include "odeheat/state.hpp"

#include <cmath>
#include <string>

namespace odeheat {

namespace detail {

void require_conforms(const HState& s, const SpaceTimeGrid& grid, const char* what) {
    if (!s.conforms(grid))
        throw std::invalid_argument(std::string(what) + ": state has " +
                                    std::to_string(s.y.size()) + " nodes, grid expects " +
                                    std::to_string(grid.num_nodes()));
    for (double v : s.y)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": non-finite field value");
    if (!std::isfinite(s.z))
        throw std::invalid_argument(std::string(what) + ": non-finite scalar value");
}

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x))
            throw std::invalid_argument(std::string(what) + ": non-finite value");
}

} // namespace detail

double inner_product(const HState& a, const HState& b, const Coupling& coupling,
                     const SpaceTimeGrid& grid) {
    if (!a.conforms(grid) || !b.conforms(grid))
        throw std::invalid_argument("inner_product: state does not conform to grid");
    const auto& w = grid.space_quadrature();
    double acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
        acc += w[j] * a.y[j] * b.y[j];
    return acc + coupling.weight() * a.z * b.z;
}

double h_norm(const HState& a, const Coupling& coupling, const SpaceTimeGrid& grid) {
    return std::sqrt(inner_product(a, a, coupling, grid));
}

double field_l2_norm(const std::vector<double>& y, const SpaceTimeGrid& grid) {
    if (static_cast<int>(y.size()) != grid.num_nodes())
        throw std::invalid_argument("field_l2_norm: size does not conform to grid");
    const auto& w = grid.space_quadrature();
    double acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
        acc += w[j] * y[j] * y[j];
    return std::sqrt(acc);
}

double control_inner_product(const SpaceTimeField& u, const SpaceTimeField& v,
                             const ControlRegion& region, const SpaceTimeGrid& grid) {
    if (!u.conforms(grid) || !v.conforms(grid))
        throw std::invalid_argument("control_inner_product: field does not conform to grid");
    const auto& tau = grid.time_quadrature();
    const auto& q = region.quadrature();
    double acc = 0.0;
    for (int n = 0; n <= grid.num_time_steps(); ++n) {
        double slice = 0.0;
        for (int j = region.first_node(); j <= region.last_node(); ++j)
            slice += q[static_cast<std::size_t>(j)] * u.at(n, j) * v.at(n, j);
        acc += tau[static_cast<std::size_t>(n)] * slice;
    }
    return acc;
}

double control_l2_norm(const SpaceTimeField& v, const ControlRegion& region,
                       const SpaceTimeGrid& grid) {
    return std::sqrt(control_inner_product(v, v, region, grid));
}

double time_l2_norm(const std::vector<double>& u, const SpaceTimeGrid& grid) {
    if (static_cast<int>(u.size()) != grid.num_levels())
        throw std::invalid_argument("time_l2_norm: size does not conform to grid");
    const auto& tau = grid.time_quadrature();
    double acc = 0.0;
    for (std::size_t n = 0; n < tau.size(); ++n)
        acc += tau[n] * u[n] * u[n];
    return std::sqrt(acc);
}

} // namespace odeheat
