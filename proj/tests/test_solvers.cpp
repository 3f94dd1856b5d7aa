#include <doctest.h>

#include "odeheat/bordered.hpp"
#include "test_helpers.hpp"

using namespace odeheat;
using namespace odeheat::testing;

namespace {

HState restrict_state(const HState& fine, int factor) {
    HState coarse;
    coarse.y.reserve((fine.y.size() - 1) / static_cast<std::size_t>(factor) + 1);
    for (std::size_t j = 0; j < fine.y.size(); j += static_cast<std::size_t>(factor))
        coarse.y.push_back(fine.y[j]);
    coarse.z = fine.z;
    return coarse;
}

double max_constant_deviation(const Trajectory& traj, double value, double zvalue) {
    double dev = 0.0;
    for (const auto& s : traj.states) {
        for (double v : s.y) dev = std::max(dev, std::abs(v - value));
        dev = std::max(dev, std::abs(s.z - zvalue));
    }
    return dev;
}

} // namespace

TEST_CASE("bordered solver matches a dense direct solve") {
    auto rng = make_rng(17);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 5 + trial % 11;
        BorderedSolver s(n);
        Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n + 1, n + 1);
        for (int i = 0; i < n; ++i) {
            s.diag[static_cast<std::size_t>(i)] = 4.0 + dist(rng);
            dense(i, i) = s.diag[static_cast<std::size_t>(i)];
            if (i > 0) {
                s.sub[static_cast<std::size_t>(i)] = dist(rng);
                dense(i, i - 1) = s.sub[static_cast<std::size_t>(i)];
            }
            if (i + 1 < n) {
                s.sup[static_cast<std::size_t>(i)] = dist(rng);
                dense(i, i + 1) = s.sup[static_cast<std::size_t>(i)];
            }
            s.col[static_cast<std::size_t>(i)] = dist(rng);
            s.row[static_cast<std::size_t>(i)] = dist(rng);
            dense(i, n) = s.col[static_cast<std::size_t>(i)];
            dense(n, i) = s.row[static_cast<std::size_t>(i)];
        }
        s.corner = 5.0 + dist(rng);
        dense(n, n) = s.corner;

        Eigen::VectorXd rhs(n + 1);
        for (int i = 0; i <= n; ++i) rhs[i] = dist(rng);

        s.factor();
        std::vector<double> b(rhs.data(), rhs.data() + n);
        std::vector<double> x;
        double xz = 0.0;
        s.solve(b, rhs[n], x, xz);

        const Eigen::VectorXd ref = dense.partialPivLu().solve(rhs);
        for (int i = 0; i < n; ++i)
            CHECK(x[static_cast<std::size_t>(i)] == doctest::Approx(ref[i]).epsilon(1e-11));
        CHECK(xz == doctest::Approx(ref[n]).epsilon(1e-11));
    }
}

TEST_CASE("constants are stationary for the free forward system") {
    for (double theta : {1.0, 0.5}) {
        SpaceTimeGrid grid(1.0, 0.6, 16, 20);
        ProblemData data = ProblemData::constants(0.0, 0.0, 0.0, Coupling(1.0, 1.0),
                                                  ControlRegion(0.3, 0.7, grid), grid);
        SolverConfig cfg;
        cfg.theta = theta;
        SpaceTimeField none;
        const Trajectory traj =
            solve_forward(none, HState::constant(grid, 2.0, 2.0), data, grid, cfg);
        CHECK(max_constant_deviation(traj, 2.0, 2.0) <= 1e-12);

        const Trajectory zero = solve_forward(none, HState::zero(grid), data, grid, cfg);
        CHECK(max_constant_deviation(zero, 0.0, 0.0) == 0.0);
    }
}

TEST_CASE("compatible constants are stationary for general coupling") {
    SpaceTimeGrid grid(1.0, 0.6, 16, 20);
    const Coupling cpl(2.5, 0.8);
    ProblemData data = ProblemData::constants(0.0, 0.0, 0.0, cpl,
                                              ControlRegion(0.3, 0.7, grid), grid);
    SolverConfig cfg;
    SpaceTimeField none;
    const double k = 3.0;
    const Trajectory traj =
        solve_forward(none, HState::constant(grid, k, k / cpl.mu), data, grid, cfg);
    CHECK(max_constant_deviation(traj, k, k / cpl.mu) <= 1e-12);

    cfg.adjoint_mode = AdjointMode::Continuous;
    const Trajectory adj =
        solve_adjoint(HState::constant(grid, k, k / cpl.mu), data, grid, cfg);
    CHECK(max_constant_deviation(adj, k, k / cpl.mu) <= 1e-12);
}

TEST_CASE("constants are stationary for the adjoint solver") {
    SpaceTimeGrid grid(1.0, 0.6, 16, 20);
    ProblemData data = ProblemData::constants(0.0, 0.0, 0.0, Coupling(1.0, 1.0),
                                              ControlRegion(0.3, 0.7, grid), grid);
    SolverConfig cfg;
    cfg.adjoint_mode = AdjointMode::Continuous;
    const Trajectory traj = solve_adjoint(HState::constant(grid, 3.0, 3.0), data, grid, cfg);
    CHECK(max_constant_deviation(traj, 3.0, 3.0) <= 1e-12);

    for (AdjointMode mode : {AdjointMode::Continuous, AdjointMode::Discrete}) {
        cfg.adjoint_mode = mode;
        const Trajectory zero = solve_adjoint(HState::zero(grid), data, grid, cfg);
        CHECK(max_constant_deviation(zero, 0.0, 0.0) == 0.0);
    }
}

TEST_CASE("trajectory endpoints carry the supplied data exactly") {
    auto rng = make_rng(5);
    SpaceTimeGrid grid(1.0, 0.5, 12, 10);
    const ProblemData data = random_problem(grid, rng);
    const HState init = random_state(grid, rng);
    SolverConfig cfg;
    SpaceTimeField none;
    const Trajectory fwd = solve_forward(none, init, data, grid, cfg);
    CHECK(fwd.num_levels() == grid.num_levels());
    for (std::size_t j = 0; j < init.y.size(); ++j)
        CHECK(fwd.initial().y[j] == init.y[j]);
    CHECK(fwd.initial().z == init.z);

    const HState fin = random_state(grid, rng);
    const Trajectory adj = solve_adjoint(fin, data, grid, cfg);
    for (std::size_t j = 0; j < fin.y.size(); ++j)
        CHECK(adj.final_state().y[j] == fin.y[j]);
    CHECK(adj.final_state().z == fin.z);
}

TEST_CASE("the coupling row holds at every level") {
    auto rng = make_rng(23);
    for (double theta : {1.0, 0.5}) {
        SpaceTimeGrid grid(1.0, 0.5, 14, 12);
        const ProblemData data = random_problem(grid, rng);
        const double mu = data.coupling.mu;
        HState init = random_state(grid, rng, 3.0);
        init.y[0] = mu * init.z; // compatible start
        SolverConfig cfg;
        cfg.theta = theta;
        const SpaceTimeField v = random_field(grid, rng);
        const Trajectory traj = solve_forward(v, init, data, grid, cfg);
        for (const auto& s : traj.states)
            CHECK(std::abs(s.y[0] - mu * s.z) <= 1e-12 * std::max(1.0, std::abs(s.z)));
    }
}

TEST_CASE("zero flux boundary equals prescribed zero flux") {
    auto rng = make_rng(31);
    SpaceTimeGrid grid(1.0, 0.5, 12, 10);
    const ProblemData data = random_problem(grid, rng);
    const HState init = random_state(grid, rng);
    SpaceTimeField none;
    SolverConfig neumann;
    SolverConfig flux;
    flux.right_bc =
        RightBoundary::prescribed(std::vector<double>(static_cast<std::size_t>(grid.num_levels()), 0.0));
    const Trajectory a = solve_forward(none, init, data, grid, neumann);
    const Trajectory b = solve_forward(none, init, data, grid, flux);
    for (int n = 0; n < grid.num_levels(); ++n)
        for (std::size_t j = 0; j < a.states[static_cast<std::size_t>(n)].y.size(); ++j)
            CHECK(a.states[static_cast<std::size_t>(n)].y[j] ==
                  b.states[static_cast<std::size_t>(n)].y[j]);
}

TEST_CASE("solver input validation") {
    SpaceTimeGrid grid(1.0, 0.5, 8, 6);
    ProblemData data = test1_problem(grid);
    SolverConfig cfg;
    SpaceTimeField none;

    HState bad = HState::zero(grid);
    bad.y[3] = std::nan("");
    CHECK_THROWS_AS(solve_forward(none, bad, data, grid, cfg), std::invalid_argument);
    CHECK_THROWS_AS(solve_adjoint(bad, data, grid, cfg), std::invalid_argument);

    SolverConfig short_flux;
    short_flux.right_bc = RightBoundary::prescribed(std::vector<double>(3, 0.0));
    CHECK_THROWS_AS(solve_forward(none, HState::zero(grid), data, grid, short_flux),
                    std::invalid_argument);

    SolverConfig bad_theta;
    bad_theta.theta = 0.3;
    CHECK_THROWS_AS(solve_forward(none, HState::zero(grid), data, grid, bad_theta),
                    std::invalid_argument);
}

TEST_CASE("duality identity with zero initial data") {
    auto rng = make_rng(99);
    SpaceTimeGrid grid(1.0, 0.6, 8, 16);
    const ProblemData data = random_problem(grid, rng);
    SolverConfig cfg; // discrete adjoint
    for (int trial = 0; trial < 25; ++trial) {
        const SpaceTimeField v = random_field(grid, rng);
        const HState f = random_state(grid, rng);
        const AdjointSolution adj = solve_adjoint_full(f, data, grid, cfg);
        const double lhs = control_inner_product(v, adj.control_trace, data.region, grid);
        SpaceTimeField src = v;
        const HState fin = solve_forward(src, HState::zero(grid), data, grid, cfg).final_state();
        const double rhs = inner_product(fin, f, data.coupling, grid);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs) + std::abs(rhs)));
    }
}

TEST_CASE("discrete duality residual vanishes on random instances") {
    auto rng = make_rng(1234);
    for (double theta : {1.0, 0.5}) {
        for (int nx : {4, 8, 16}) {
            SpaceTimeGrid grid(1.0, 0.6, nx, 12);
            const ProblemData data = random_problem(grid, rng);
            SolverConfig cfg;
            cfg.theta = theta;
            for (int trial = 0; trial < 10; ++trial) {
                const SpaceTimeField v = random_field(grid, rng);
                const HState y0 = random_state(grid, rng);
                const HState f = random_state(grid, rng);
                const AdjointSolution adj = solve_adjoint_full(f, data, grid, cfg);
                const HState fin = solve_forward(v, y0, data, grid, cfg).final_state();
                const double t1 = control_inner_product(v, adj.control_trace, data.region, grid);
                const double t2 = inner_product(fin, f, data.coupling, grid);
                const double t3 =
                    inner_product(y0, adj.trajectory.initial(), data.coupling, grid);
                const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
                CHECK(std::abs(duality_residual(v, y0, f, data, grid, cfg)) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("coarse run tracks a fine reference on the first experiment's data") {
    const SpaceTimeGrid coarse(1.0, 0.6, 30, 120);
    const SpaceTimeGrid fine(1.0, 0.6, 240, 7680);
    SolverConfig cfg;
    SpaceTimeField none;

    const HState c_final = solve_forward(none, sine_state(coarse, -10.0, 0.0),
                                         test1_problem(coarse), coarse, cfg)
                               .final_state();
    const HState f_final = solve_forward(none, sine_state(fine, -10.0, 0.0),
                                         test1_problem(fine), fine, cfg)
                               .final_state();
    const HState ref = restrict_state(f_final, 8);
    HState diff = c_final;
    for (std::size_t j = 0; j < diff.y.size(); ++j) diff.y[j] -= ref.y[j];
    diff.z -= ref.z;
    const Coupling cpl(1.0, 1.0);
    CHECK(h_norm(diff, cpl, coarse) <= 0.02 * h_norm(ref, cpl, coarse));
}

TEST_CASE("halving dx and dt cuts the final-state error by at least 1.8") {
    SolverConfig cfg; // theta = 1
    SpaceTimeField none;
    const SpaceTimeGrid ref_grid(1.0, 0.6, 256, 2048);
    const HState ref_final = solve_forward(none, sine_state(ref_grid, -10.0, 0.0),
                                           test1_problem(ref_grid), ref_grid, cfg)
                                 .final_state();
    std::vector<double> errs;
    for (int level = 0; level < 4; ++level) {
        const int nx = 16 << level;
        const int nt = 16 << level;
        const SpaceTimeGrid grid(1.0, 0.6, nx, nt);
        const HState fin = solve_forward(none, sine_state(grid, -10.0, 0.0),
                                         test1_problem(grid), grid, cfg)
                               .final_state();
        const HState ref = restrict_state(ref_final, 256 / nx);
        HState diff = fin;
        for (std::size_t j = 0; j < diff.y.size(); ++j) diff.y[j] -= ref.y[j];
        diff.z -= ref.z;
        errs.push_back(h_norm(diff, Coupling(1.0, 1.0), grid));
    }
    for (std::size_t k = 0; k + 1 < errs.size(); ++k)
        CHECK(errs[k] / errs[k + 1] >= 1.8);
}

TEST_CASE("uncontrolled_final is the last trajectory state") {
    SpaceTimeGrid grid(1.0, 0.6, 30, 60);
    const ProblemData data = test1_problem(grid);
    SolverConfig cfg;
    CHECK(h_norm(uncontrolled_final(HState::zero(grid), data, grid, cfg), data.coupling, grid) ==
          0.0);

    const HState init = sine_state(grid, -10.0, 0.0);
    const HState fin = uncontrolled_final(init, data, grid, cfg);
    CHECK(h_norm(fin, data.coupling, grid) > 0.0);
    SpaceTimeField none;
    const Trajectory traj = solve_forward(none, init, data, grid, cfg);
    for (std::size_t j = 0; j < fin.y.size(); ++j)
        CHECK(fin.y[j] == traj.final_state().y[j]);
    CHECK(fin.z == traj.final_state().z);
}
