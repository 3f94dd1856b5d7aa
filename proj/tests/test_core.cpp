#include <doctest.h>

#include "test_helpers.hpp"

using namespace odeheat;
using namespace odeheat::testing;

TEST_CASE("grid construction and quadrature") {
    SpaceTimeGrid grid(1.0, 0.6, 30, 120);
    CHECK(grid.dx() == doctest::Approx(1.0 / 30).epsilon(1e-15));
    CHECK(grid.dt() == doctest::Approx(0.005).epsilon(1e-15));

    double sum = 0.0;
    for (double w : grid.space_quadrature()) sum += w;
    CHECK(std::abs(sum - grid.length()) <= 1e-14 * grid.length());

    CHECK_THROWS_AS(SpaceTimeGrid(0.0, 1.0, 10, 10), std::invalid_argument);
    CHECK_THROWS_AS(SpaceTimeGrid(1.0, -1.0, 10, 10), std::invalid_argument);
    CHECK_THROWS_AS(SpaceTimeGrid(1.0, 1.0, 3, 10), std::invalid_argument);
    CHECK_THROWS_AS(SpaceTimeGrid(1.0, 1.0, 10, 1), std::invalid_argument);
}

TEST_CASE("space quadrature integrates linear functions exactly") {
    for (int nx : {4, 7, 16, 31}) {
        SpaceTimeGrid grid(2.0, 1.0, nx, 4);
        // integral of 3x + 1 over (0,2) = 8
        double acc = 0.0;
        for (int j = 0; j <= nx; ++j)
            acc += grid.space_quadrature()[static_cast<std::size_t>(j)] * (3.0 * grid.node(j) + 1.0);
        CHECK(std::abs(acc - 8.0) <= 1e-13 * 8.0);
    }
}

TEST_CASE("coupling requires mu*kappa > 0") {
    CHECK_NOTHROW(Coupling(2.0, 0.5));
    CHECK_NOTHROW(Coupling(-1.0, -3.0));
    CHECK_THROWS_AS(Coupling(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(Coupling(0.0, 1.0), std::invalid_argument);
    CHECK(Coupling(3.0, 1.5).weight() == doctest::Approx(2.0));
}

TEST_CASE("control region membership and weights") {
    SpaceTimeGrid grid(1.0, 0.6, 10, 4);
    ControlRegion region(0.3, 0.7, grid);
    CHECK(region.first_node() == 3);
    CHECK(region.last_node() == 7);
    double measure = 0.0;
    for (double q : region.quadrature()) measure += q;
    CHECK(measure == doctest::Approx(0.4).epsilon(1e-14));

    CHECK_THROWS_AS(ControlRegion(0.7, 0.3, grid), std::invalid_argument);
    CHECK_THROWS_AS(ControlRegion(-0.1, 0.5, grid), std::invalid_argument);
    CHECK_THROWS_AS(ControlRegion(0.31, 0.32, grid), std::invalid_argument); // < 2 nodes
}

TEST_CASE("inner product examples") {
    SpaceTimeGrid grid(1.0, 0.6, 8, 4);
    Coupling cpl(1.0, 1.0);

    const HState zero = HState::zero(grid);
    auto rng = make_rng(11);
    const HState b = random_state(grid, rng);
    CHECK(inner_product(zero, b, cpl, grid) == 0.0);

    // constants are integrated exactly: <(1,2),(1,3)> = 1 + 6
    const HState u = HState::constant(grid, 1.0, 2.0);
    const HState v = HState::constant(grid, 1.0, 3.0);
    CHECK(inner_product(u, v, cpl, grid) == doctest::Approx(7.0).epsilon(1e-15));

    HState short_state = u;
    short_state.y.pop_back();
    CHECK_THROWS_AS(inner_product(short_state, v, cpl, grid), std::invalid_argument);
}

TEST_CASE("inner product is symmetric, bilinear and positive definite") {
    auto rng = make_rng(42);
    for (int nx : {4, 8, 16}) {
        SpaceTimeGrid grid(1.0, 0.5, nx, 4);
        Coupling cpl(1.3, 0.7);
        for (int trial = 0; trial < 100; ++trial) {
            const HState a = random_state(grid, rng);
            const HState b = random_state(grid, rng);
            const HState c = random_state(grid, rng);
            const double ab = inner_product(a, b, cpl, grid);
            CHECK(std::abs(ab - inner_product(b, a, cpl, grid)) <=
                  1e-15 * std::max(1.0, std::abs(ab)));

            // bilinearity: <2a + c, b> = 2<a,b> + <c,b>
            HState lin = c;
            for (std::size_t j = 0; j < lin.y.size(); ++j) lin.y[j] += 2.0 * a.y[j];
            lin.z += 2.0 * a.z;
            const double lhs = inner_product(lin, b, cpl, grid);
            const double rhs = 2.0 * ab + inner_product(c, b, cpl, grid);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));

            const double aa = inner_product(a, a, cpl, grid);
            CHECK(aa >= 0.0);
        }
        // positive definiteness: zero norm only for the zero state
        CHECK(h_norm(HState::zero(grid), cpl, grid) == 0.0);
        HState e = HState::zero(grid);
        e.y[2] = 1e-8;
        CHECK(h_norm(e, cpl, grid) > 0.0);
    }
}

TEST_CASE("h_norm examples and triangle inequality") {
    SpaceTimeGrid grid(1.0, 0.6, 8, 4);
    Coupling cpl(1.0, 1.0);
    CHECK(h_norm(HState::constant(grid, 1.0, 1.0), cpl, grid) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    auto rng = make_rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const HState a = random_state(grid, rng);
        const HState b = random_state(grid, rng);
        const double n2 = h_norm(a, cpl, grid);
        CHECK(std::abs(n2 * n2 - inner_product(a, a, cpl, grid)) <=
              1e-15 * std::max(1.0, n2 * n2));
        HState sum = a;
        for (std::size_t j = 0; j < sum.y.size(); ++j) sum.y[j] += b.y[j];
        sum.z += b.z;
        CHECK(h_norm(sum, cpl, grid) <= n2 + h_norm(b, cpl, grid) + 1e-12);
    }
}

TEST_CASE("control norm examples") {
    SpaceTimeGrid grid(1.0, 0.6, 10, 6);
    ControlRegion region(0.3, 0.7, grid);

    SpaceTimeField zero(grid);
    CHECK(control_l2_norm(zero, region, grid) == 0.0);

    SpaceTimeField ones(grid);
    for (auto& v : ones.values()) v = 1.0;
    CHECK(control_l2_norm(ones, region, grid) ==
          doctest::Approx(std::sqrt(0.4 * 0.6)).epsilon(1e-14));

    auto rng = make_rng(3);
    SpaceTimeField v = random_field(grid, rng);
    SpaceTimeField v2 = v;
    for (auto& x : v2.values()) x *= 2.0;
    CHECK(control_l2_norm(v2, region, grid) ==
          doctest::Approx(2.0 * control_l2_norm(v, region, grid)).epsilon(1e-13));

    // values off the mask are ignored
    SpaceTimeField masked_only = v;
    for (int n = 0; n <= grid.num_time_steps(); ++n)
        for (int j = 0; j <= grid.num_space_intervals(); ++j)
            if (!region.contains(j)) masked_only.at(n, j) = 99.0;
    CHECK(control_l2_norm(masked_only, region, grid) ==
          doctest::Approx(control_l2_norm(v, region, grid)).epsilon(1e-15));

    SpaceTimeField wrong;
    CHECK_THROWS_AS(control_l2_norm(wrong, region, grid), std::invalid_argument);
}
