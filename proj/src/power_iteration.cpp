#include "minta/power_iteration.hpp"

#include <cmath>

#include "minta/rng.hpp"

namespace minta {

EigenConvergenceError::EigenConvergenceError(double residual, int iterations)
    : std::runtime_error("power iteration did not converge after " + std::to_string(iterations) +
                         " iterations (residual " + std::to_string(residual) + ")"),
      residual_(residual),
      iterations_(iterations) {}

namespace {

void canonicalize_sign(Eigen::VectorXd& v) {
    int arg_max = 0;
    double best = -1.0;
    for (int i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > best + 1e-15) {
            best = mag;
            arg_max = i;
        }
    }
    if (v[arg_max] < 0.0) v = -v;
}

}  // namespace

EigenResult principal_eigenvector(const Eigen::MatrixXd& matrix, PowerIterationOptions options) {
    if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
        throw std::invalid_argument("principal_eigenvector: matrix must be square and nonempty");
    }
    if (!matrix.allFinite()) {
        throw std::invalid_argument("principal_eigenvector: matrix has non-finite entries");
    }
    const auto n = matrix.rows();

    Rng rng(options.seed);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.next_normal();
    v.normalize();

    double lambda = 0.0;
    double residual = 0.0;
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        Eigen::VectorXd mv = matrix * v;
        lambda = v.dot(mv);
        residual = (mv - lambda * v).norm();
        if (residual <= options.tolerance * lambda || residual == 0.0) {
            canonicalize_sign(v);
            return EigenResult{v, lambda};
        }
        const double norm = mv.norm();
        if (norm == 0.0) {
            // v lies in the kernel of a PSD matrix: it is an eigenvector with
            // eigenvalue zero, which for PSD input means M == 0 on this span.
            canonicalize_sign(v);
            return EigenResult{v, 0.0};
        }
        v = mv / norm;
    }
    throw EigenConvergenceError(residual, options.max_iterations);
}

}  // namespace minta
