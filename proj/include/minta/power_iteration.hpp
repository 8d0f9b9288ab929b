#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>

namespace minta {

class EigenConvergenceError : public std::runtime_error {
public:
    EigenConvergenceError(double residual, int iterations);
    double residual() const { return residual_; }
    int iterations() const { return iterations_; }

private:
    double residual_;
    int iterations_;
};

struct EigenResult {
    Eigen::VectorXd vector;  // unit norm, largest-magnitude component positive
    double value = 0.0;
};

struct PowerIterationOptions {
    double tolerance = 1e-9;   // relative residual: ||Mv - lambda v|| <= tol * lambda
    int max_iterations = 10000;
    std::uint64_t seed = 1;    // random start; deterministic tie-break on flat spectra
};

// Dominant eigenpair of a symmetric PSD matrix by power iteration. Throws
// EigenConvergenceError (carrying the residual) when the top of the spectrum
// is too degenerate to separate within the iteration budget.
EigenResult principal_eigenvector(const Eigen::MatrixXd& matrix, PowerIterationOptions options = {});

}  // namespace minta
