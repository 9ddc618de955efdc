#pragma once

#include "lram/matrix.hpp"

namespace lram {

/// Smooth surrogates for the entrywise norms. Charbonnier and Huber
/// approximate |X|_1; LogSumExp approximates |X|_inf.
enum class SmootherKind { Charbonnier, Huber, LogSumExp };

/// h(X, tau) = tau * sum_ij (sqrt((X_ij/tau)^2 + 1) - 1).
/// Satisfies |X|_1 - mn*tau <= h(X, tau) <= |X|_1.
double charbonnier_value(const DenseMatrix& x, double tau);

/// G_ij = (X_ij/tau) / sqrt((X_ij/tau)^2 + 1).
DenseMatrix charbonnier_grad(const DenseMatrix& x, double tau);

/// Diagonal of the (diagonal) Hessian, as an m x n matrix:
/// D_ij = (1/tau) * ((X_ij/tau)^2 + 1)^{-3/2}. Entries lie in (0, 1/tau].
DenseMatrix charbonnier_hessian_diag(const DenseMatrix& x, double tau);

/// Piecewise quadratic/linear surrogate: x^2/(2 tau) for |x| <= tau,
/// |x| - tau/2 otherwise. Only once differentiable.
double huber_value(const DenseMatrix& x, double tau);
DenseMatrix huber_grad(const DenseMatrix& x, double tau);

/// sigma(X, tau) = tau * log((sum_ij e^{X_ij/tau} + e^{-X_ij/tau}) / (2mn)),
/// evaluated with max-subtraction so tau ~ 1e-3 does not overflow.
/// Satisfies |X|_inf - tau*log(2mn) <= sigma(X, tau) <= |X|_inf.
double logsumexp_value(const DenseMatrix& x, double tau);

/// Softmax-style gradient N / sum(P) with P_ij = e^{X_ij/tau} + e^{-X_ij/tau},
/// N_ij = e^{X_ij/tau} - e^{-X_ij/tau}; every |G_ij| < 1 and sum |G_ij| <= 1.
DenseMatrix logsumexp_grad(const DenseMatrix& x, double tau);

/// Quadratic form y^T Hess y without materializing the mn x mn Hessian:
/// (sum P_ij Y_ij^2 - (sum N_ij Y_ij)^2 / sum(P)) / (tau * sum(P)).
/// Always in [0, ||Y||_F^2 / tau].
double logsumexp_hessian_quadform(const DenseMatrix& x, double tau, const DenseMatrix& y);

/// Gradient-Lipschitz constant of the smoother: 1/tau for all three kinds.
double lipschitz_constant(SmootherKind kind, double tau);

/// Entries more than this many tau below the max contribute < e^-50 to
/// the logsumexp sums and are skipped; exact to double precision.
inline constexpr double kLogSumExpCutoff = 50.0;

}  // namespace lram
