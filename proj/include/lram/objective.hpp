#pragma once

#include <utility>

#include "lram/matrix.hpp"
#include "lram/smoothers.hpp"

namespace lram {

/// Smoother selection for the composite objective. Quadratic is the
/// plain least-squares residual 0.5*||M - X||_F^2, used as a smooth
/// reference objective in tests and diagnostics.
enum class ObjectiveKind { Charbonnier, Huber, LogSumExp, Quadratic };

/// f(X) = smoother(M - X, tau) + (lambda/2) ||X||_F^2.
/// Immutable value; safe to share across workers.
struct SmoothedObjective {
    DenseMatrix m;
    ObjectiveKind kind = ObjectiveKind::Charbonnier;
    double tau = 1e-3;
    double lambda = 0.0;

    /// Gradient-Lipschitz estimate of the composite: 1/tau + lambda
    /// (1 + lambda for the quadratic reference).
    double lipschitz_estimate() const;
};

double objective_value(const SmoothedObjective& obj, const DenseMatrix& x);

/// grad_X f = -smoother_grad(M - X, tau) + lambda * X.
DenseMatrix objective_grad_x(const SmoothedObjective& obj, const DenseMatrix& x);

/// Fused value + gradient sharing a single residual pass; writes the
/// gradient into `grad` (same shape as M, reused across calls) and
/// returns the value. Equal to the separate calls up to rounding.
double objective_value_and_grad(const SmoothedObjective& obj, const DenseMatrix& x,
                                DenseMatrix& grad);

/// (G V, G^T U) with G = grad_x at U V^T; G is evaluated once.
std::pair<DenseMatrix, DenseMatrix> objective_grad_factors(const SmoothedObjective& obj,
                                                           const FactorPair& f);

}  // namespace lram
