#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lram/matrix.hpp"

namespace lram {

/// Power iteration or SVD failed to converge within the iteration cap.
/// Carries the last (partial) estimate.
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& msg, double partial)
        : std::runtime_error(msg), partial_estimate(partial) {}
    double partial_estimate;
};

/// Top-k singular triplets; columns of `left`/`right` are orthonormal,
/// `singulars` sorted non-increasing.
struct TruncatedSVD {
    DenseMatrix left;               // m x k
    std::vector<double> singulars;  // length k
    DenseMatrix right;              // n x k

    DenseMatrix reconstruct() const;
};

/// Largest singular value via power iteration on X^T X (or X X^T,
/// whichever gram is smaller). Seeded deterministically; restarts once
/// from a fixed fallback vector before giving up.
///
/// `warm_start`, when non-empty, seeds the iteration and is overwritten
/// with the converged vector so callers can reuse it across nearby inputs.
double spectral_norm(const DenseMatrix& x, double tol = 1e-8, std::size_t max_iters = 1000,
                     std::vector<double>* warm_start = nullptr);

/// Full SVD by one-sided Jacobi; deterministic cyclic sweep order.
TruncatedSVD full_svd(const DenseMatrix& x);

/// Top-k triplets of full_svd. Throws std::invalid_argument if k is out
/// of range.
TruncatedSVD truncated_svd(const DenseMatrix& x, std::size_t k);

/// Balanced factors (U = A_r S^{1/2}, V = B_r S^{1/2}) of the best
/// rank-r Frobenius approximation of x, so U^T U = V^T V.
FactorPair balanced_factors(const DenseMatrix& x, std::size_t r);

}  // namespace lram
