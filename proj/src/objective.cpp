#include "lram/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace lram {

namespace {

void require_same_shape(const SmoothedObjective& obj, const DenseMatrix& x) {
    if (!obj.m.same_shape(x))
        throw std::invalid_argument("objective: X shape does not match data matrix");
}

double smoother_value(ObjectiveKind kind, const DenseMatrix& r, double tau) {
    switch (kind) {
        case ObjectiveKind::Charbonnier: return charbonnier_value(r, tau);
        case ObjectiveKind::Huber: return huber_value(r, tau);
        case ObjectiveKind::LogSumExp: return logsumexp_value(r, tau);
        case ObjectiveKind::Quadratic: {
            const double fro = frobenius_norm(r);
            return 0.5 * fro * fro;
        }
    }
    throw std::invalid_argument("unknown objective kind");
}

DenseMatrix smoother_grad(ObjectiveKind kind, const DenseMatrix& r, double tau) {
    switch (kind) {
        case ObjectiveKind::Charbonnier: return charbonnier_grad(r, tau);
        case ObjectiveKind::Huber: return huber_grad(r, tau);
        case ObjectiveKind::LogSumExp: return logsumexp_grad(r, tau);
        case ObjectiveKind::Quadratic: return r;
    }
    throw std::invalid_argument("unknown objective kind");
}

}  // namespace

double SmoothedObjective::lipschitz_estimate() const {
    if (kind == ObjectiveKind::Quadratic) return 1.0 + lambda;
    SmootherKind sk = kind == ObjectiveKind::Charbonnier ? SmootherKind::Charbonnier
                      : kind == ObjectiveKind::Huber     ? SmootherKind::Huber
                                                         : SmootherKind::LogSumExp;
    return lipschitz_constant(sk, tau) + lambda;
}

double objective_value(const SmoothedObjective& obj, const DenseMatrix& x) {
    require_same_shape(obj, x);
    double v = smoother_value(obj.kind, sub(obj.m, x), obj.tau);
    if (obj.lambda > 0.0) {
        const double fro = frobenius_norm(x);
        v += 0.5 * obj.lambda * fro * fro;
    }
    return v;
}

DenseMatrix objective_grad_x(const SmoothedObjective& obj, const DenseMatrix& x) {
    require_same_shape(obj, x);
    DenseMatrix g = scale(smoother_grad(obj.kind, sub(obj.m, x), obj.tau), -1.0);
    if (obj.lambda > 0.0) g = add(g, scale(x, obj.lambda));
    return g;
}

double objective_value_and_grad(const SmoothedObjective& obj, const DenseMatrix& x,
                                DenseMatrix& grad) {
    require_same_shape(obj, x);
    if (!grad.same_shape(x)) throw std::invalid_argument("objective: grad buffer shape");
    const std::size_t n = x.size();
    const double* mp = obj.m.data().data();
    const double* xp = x.data().data();
    double* gp = grad.data().data();
    const double tau = obj.tau, lambda = obj.lambda;

    double value = 0.0;
    switch (obj.kind) {
        case ObjectiveKind::Charbonnier: {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double z = (mp[i] - xp[i]) / tau;
                const double s = std::sqrt(z * z + 1.0);
                acc += s - 1.0;
                gp[i] = -(z / s) + lambda * xp[i];
            }
            value = tau * acc;
            break;
        }
        case ObjectiveKind::Huber: {
            for (std::size_t i = 0; i < n; ++i) {
                const double r = mp[i] - xp[i];
                const double a = std::abs(r);
                if (a <= tau) {
                    value += r * r / (2.0 * tau);
                    gp[i] = -(r / tau) + lambda * xp[i];
                } else {
                    value += a - tau / 2.0;
                    gp[i] = -(r > 0.0 ? 1.0 : -1.0) + lambda * xp[i];
                }
            }
            break;
        }
        case ObjectiveKind::LogSumExp: {
            // Pass 1: residual into the grad buffer, track the peak.
            double peak = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = mp[i] - xp[i];
                gp[i] = r;
                peak = std::max(peak, std::abs(r));
            }
            const double shift = peak / tau;
            const double floor = peak - kLogSumExpCutoff * tau;
            // Pass 2: P/N sums over the active set only.
            double sum_p = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = gp[i];
                if (std::abs(r) < floor) {
                    gp[i] = 0.0;
                    continue;
                }
                const double z = r / tau;
                const double ep = std::exp(z - shift);
                const double en = std::exp(-z - shift);
                sum_p += ep + en;
                gp[i] = ep - en;
            }
            const double mn = static_cast<double>(n);
            value = tau * (shift + std::log(sum_p) - std::log(2.0 * mn));
            for (std::size_t i = 0; i < n; ++i) gp[i] = -(gp[i] / sum_p) + lambda * xp[i];
            break;
        }
        case ObjectiveKind::Quadratic: {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = mp[i] - xp[i];
                acc += r * r;
                gp[i] = -r + lambda * xp[i];
            }
            const double fro = std::sqrt(acc);
            value = 0.5 * fro * fro;
            break;
        }
    }
    if (lambda > 0.0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += xp[i] * xp[i];
        const double fro = std::sqrt(acc);
        value += 0.5 * lambda * fro * fro;
    }
    return value;
}

std::pair<DenseMatrix, DenseMatrix> objective_grad_factors(const SmoothedObjective& obj,
                                                           const FactorPair& f) {
    const DenseMatrix g = objective_grad_x(obj, f.product());
    return {matmul(g, f.v), matmul_at(g, f.u)};
}

}  // namespace lram
