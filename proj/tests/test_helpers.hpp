#pragma once

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "odeheat/extension.hpp"
#include "odeheat/hum.hpp"

namespace odeheat::testing {

inline constexpr double kPi = 3.14159265358979323846;

inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

inline HState random_state(const SpaceTimeGrid& grid, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    HState s = HState::zero(grid);
    for (auto& v : s.y) v = dist(rng);
    s.z = dist(rng);
    return s;
}

inline SpaceTimeField random_field(const SpaceTimeGrid& grid, std::mt19937_64& rng,
                                   double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    SpaceTimeField f(grid);
    for (auto& v : f.values()) v = dist(rng);
    return f;
}

inline HState sine_state(const SpaceTimeGrid& grid, double amplitude, double zvalue) {
    HState s = HState::zero(grid);
    for (int j = 0; j <= grid.num_space_intervals(); ++j)
        s.y[static_cast<std::size_t>(j)] = amplitude * std::sin(kPi * grid.node(j));
    s.z = zvalue;
    return s;
}

/// Test-1 data: a=1, b=0, c=1, mu=kappa=1, omega=(0.3,0.7) on (0,1)x(0,0.6).
inline ProblemData test1_problem(const SpaceTimeGrid& grid) {
    return ProblemData::constants(1.0, 0.0, 1.0, Coupling(1.0, 1.0),
                                  ControlRegion(0.3, 0.7, grid), grid);
}

inline ProblemData random_problem(const SpaceTimeGrid& grid, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    SpaceTimeField a(grid), b(grid);
    for (auto& v : a.values()) v = dist(rng);
    for (auto& v : b.values()) v = dist(rng);
    std::vector<double> c(static_cast<std::size_t>(grid.num_levels()));
    for (auto& v : c) v = dist(rng);
    std::uniform_real_distribution<double> cpl(0.5, 2.0);
    const double w0 = 0.25 * grid.length();
    const double w1 = 0.75 * grid.length();
    return ProblemData(std::move(a), std::move(b), std::move(c), Coupling(cpl(rng), cpl(rng)),
                       ControlRegion(w0, w1, grid), grid);
}

inline Eigen::VectorXd to_vector(const HState& s) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(s.y.size()) + 1);
    for (std::size_t j = 0; j < s.y.size(); ++j) v[static_cast<Eigen::Index>(j)] = s.y[j];
    v[v.size() - 1] = s.z;
    return v;
}

inline HState from_vector(const Eigen::VectorXd& v) {
    HState s;
    s.y.assign(v.data(), v.data() + v.size() - 1);
    s.z = v[v.size() - 1];
    return s;
}

/// Diagonal of the weighted state inner product.
inline Eigen::VectorXd state_weights(const ProblemData& data, const SpaceTimeGrid& grid) {
    const auto& w = grid.space_quadrature();
    Eigen::VectorXd h(static_cast<Eigen::Index>(w.size()) + 1);
    for (std::size_t j = 0; j < w.size(); ++j) h[static_cast<Eigen::Index>(j)] = w[j];
    h[h.size() - 1] = data.coupling.weight();
    return h;
}

/// Dense controllability operator, assembled column by column in the nodal
/// basis: column i is gramian_apply(e_i).
inline Eigen::MatrixXd dense_gramian(const ProblemData& data, const SpaceTimeGrid& grid,
                                     const SolverConfig& config) {
    const int n = grid.num_nodes() + 1;
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e[i] = 1.0;
        G.col(i) = to_vector(gramian_apply(from_vector(e), data, grid, config));
    }
    return G;
}

} // namespace odeheat::testing
