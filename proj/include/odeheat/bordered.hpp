#pragma once

#include <stdexcept>
#include <vector>

namespace odeheat {

/// Direct solver for bordered tridiagonal systems
///
///   [ T  c ] [x ]   [b ]
///   [ r' d ] [xz] = [bz]
///
/// with T tridiagonal of size n, c and r dense vectors and d a scalar. This is
/// the step matrix shape shared by the forward and adjoint solves: tridiagonal
/// in the field unknowns, bordered by the scalar ODE row and column.
///
/// factor() runs a Thomas elimination of T (no pivoting; the step matrices are
/// strongly diagonally dominant for theta >= 0.5 and dt > 0) and precomputes
/// T^{-1} c, after which each solve() costs one tridiagonal sweep.
class BorderedSolver {
    int n_;

public:
    explicit BorderedSolver(int n)
        : n_(n), sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), col(n, 0.0), row(n, 0.0),
          mult_(n, 0.0), piv_(n, 0.0), q_(n, 0.0), work_(n, 0.0) {
        if (n < 3) throw std::invalid_argument("BorderedSolver: block size must be >= 3");
    }

    int size() const { return n_; }

    // Matrix entries, refilled before each factor(): sub[i] = T(i,i-1),
    // diag[i] = T(i,i), sup[i] = T(i,i+1); sub[0] and sup[n-1] are ignored.
    std::vector<double> sub, diag, sup, col, row;
    double corner = 0.0;

    void factor() {
        piv_[0] = diag[0];
        require_pivot(piv_[0]);
        for (int i = 1; i < n_; ++i) {
            mult_[i] = sub[static_cast<std::size_t>(i)] / piv_[i - 1];
            piv_[i] = diag[static_cast<std::size_t>(i)] - mult_[i] * sup[static_cast<std::size_t>(i - 1)];
            require_pivot(piv_[i]);
        }
        tridiag_solve(col, q_);
        double rq = 0.0;
        for (int i = 0; i < n_; ++i) rq += row[static_cast<std::size_t>(i)] * q_[i];
        denom_ = corner - rq;
        require_pivot(denom_);
    }

    /// Solve for one right-hand side (b, bz); writes (x, xz).
    void solve(const std::vector<double>& b, double bz, std::vector<double>& x, double& xz) const {
        tridiag_solve(b, work_);
        double rp = 0.0;
        for (int i = 0; i < n_; ++i) rp += row[static_cast<std::size_t>(i)] * work_[i];
        xz = (bz - rp) / denom_;
        x.resize(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) x[static_cast<std::size_t>(i)] = work_[i] - xz * q_[i];
    }

private:
    static void require_pivot(double p) {
        if (!(p > 1e-300 || p < -1e-300))
            throw std::runtime_error("BorderedSolver: singular step matrix");
    }

    void tridiag_solve(const std::vector<double>& b, std::vector<double>& x) const {
        x[0] = b[0];
        for (int i = 1; i < n_; ++i)
            x[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)] - mult_[i] * x[static_cast<std::size_t>(i - 1)];
        x[static_cast<std::size_t>(n_ - 1)] /= piv_[n_ - 1];
        for (int i = n_ - 2; i >= 0; --i)
            x[static_cast<std::size_t>(i)] =
                (x[static_cast<std::size_t>(i)] - sup[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i + 1)]) / piv_[i];
    }

    std::vector<double> mult_, piv_, q_;
    mutable std::vector<double> work_;
    double denom_ = 0.0;
};

} // namespace odeheat
