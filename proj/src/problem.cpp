#include "odeheat/problem.hpp"

#include <cmath>

namespace odeheat {

ProblemData::ProblemData(SpaceTimeField a_, SpaceTimeField b_, std::vector<double> c_,
                         Coupling coupling_, ControlRegion region_, const SpaceTimeGrid& grid)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)),
      coupling(coupling_), region(std::move(region_)) {
    if (!a.conforms(grid) || !b.conforms(grid))
        throw std::invalid_argument("ProblemData: potential samples do not conform to grid");
    if (static_cast<int>(c.size()) != grid.num_levels())
        throw std::invalid_argument("ProblemData: c must be sampled at every time level");
    detail::require_finite(a.values(), "ProblemData: a");
    detail::require_finite(b.values(), "ProblemData: b");
    detail::require_finite(c, "ProblemData: c");
}

ProblemData ProblemData::sample(const std::function<double(double, double)>& a_fn,
                                const std::function<double(double, double)>& b_fn,
                                const std::function<double(double)>& c_fn,
                                Coupling coupling, ControlRegion region,
                                const SpaceTimeGrid& grid) {
    SpaceTimeField a(grid), b(grid);
    std::vector<double> c(static_cast<std::size_t>(grid.num_levels()));
    for (int n = 0; n <= grid.num_time_steps(); ++n) {
        const double t = grid.level(n);
        c[static_cast<std::size_t>(n)] = c_fn(t);
        for (int j = 0; j <= grid.num_space_intervals(); ++j) {
            const double x = grid.node(j);
            a.at(n, j) = a_fn(x, t);
            b.at(n, j) = b_fn(x, t);
        }
    }
    return ProblemData(std::move(a), std::move(b), std::move(c), coupling, std::move(region), grid);
}

ProblemData ProblemData::constants(double a_val, double b_val, double c_val,
                                   Coupling coupling, ControlRegion region,
                                   const SpaceTimeGrid& grid) {
    return sample([a_val](double, double) { return a_val; },
                  [b_val](double, double) { return b_val; },
                  [c_val](double) { return c_val; },
                  coupling, std::move(region), grid);
}

} // namespace odeheat
