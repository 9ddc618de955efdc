#include "lram/smoothers.hpp"

#include <cmath>
#include <stdexcept>

namespace lram {

namespace {

void require_tau(double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("smoothing parameter tau must be positive");
}

}  // namespace

double charbonnier_value(const DenseMatrix& x, double tau) {
    require_tau(tau);
    double s = 0.0;
    for (double v : x.data()) {
        const double z = v / tau;
        s += std::sqrt(z * z + 1.0) - 1.0;
    }
    return tau * s;
}

DenseMatrix charbonnier_grad(const DenseMatrix& x, double tau) {
    require_tau(tau);
    DenseMatrix g = x;
    for (double& v : g.data()) {
        const double z = v / tau;
        v = z / std::sqrt(z * z + 1.0);
    }
    return g;
}

DenseMatrix charbonnier_hessian_diag(const DenseMatrix& x, double tau) {
    require_tau(tau);
    DenseMatrix d = x;
    for (double& v : d.data()) {
        const double z = v / tau;
        v = 1.0 / (tau * std::pow(z * z + 1.0, 1.5));
    }
    return d;
}

double huber_value(const DenseMatrix& x, double tau) {
    require_tau(tau);
    double s = 0.0;
    for (double v : x.data()) {
        const double a = std::abs(v);
        s += (a <= tau) ? v * v / (2.0 * tau) : a - tau / 2.0;
    }
    return s;
}

DenseMatrix huber_grad(const DenseMatrix& x, double tau) {
    require_tau(tau);
    DenseMatrix g = x;
    for (double& v : g.data()) {
        v = (std::abs(v) <= tau) ? v / tau : (v > 0.0 ? 1.0 : -1.0);
    }
    return g;
}

double logsumexp_value(const DenseMatrix& x, double tau) {
    require_tau(tau);
    const double peak = entrywise_linf_norm(x);
    const double shift = peak / tau;
    const double floor = peak - kLogSumExpCutoff * tau;
    double s = 0.0;
    for (double v : x.data()) {
        if (std::abs(v) < floor) continue;
        const double z = v / tau;
        s += std::exp(z - shift) + std::exp(-z - shift);
    }
    const double mn = static_cast<double>(x.rows()) * static_cast<double>(x.cols());
    return tau * (shift + std::log(s) - std::log(2.0 * mn));
}

DenseMatrix logsumexp_grad(const DenseMatrix& x, double tau) {
    require_tau(tau);
    const double peak = entrywise_linf_norm(x);
    const double shift = peak / tau;
    const double floor = peak - kLogSumExpCutoff * tau;
    double sum_p = 0.0;
    DenseMatrix g = x;
    for (double& v : g.data()) {
        if (std::abs(v) < floor) {
            v = 0.0;
            continue;
        }
        const double z = v / tau;
        const double ep = std::exp(z - shift);
        const double en = std::exp(-z - shift);
        sum_p += ep + en;
        v = ep - en;
    }
    for (double& v : g.data()) v /= sum_p;
    return g;
}

double logsumexp_hessian_quadform(const DenseMatrix& x, double tau, const DenseMatrix& y) {
    require_tau(tau);
    if (!x.same_shape(y))
        throw std::invalid_argument("logsumexp_hessian_quadform: shape mismatch");
    const double shift = entrywise_linf_norm(x) / tau;
    double sum_p = 0.0, p_quad = 0.0, n_dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double z = x.data()[i] / tau;
        const double ep = std::exp(z - shift);
        const double en = std::exp(-z - shift);
        const double yi = y.data()[i];
        sum_p += ep + en;
        p_quad += (ep + en) * yi * yi;
        n_dot += (ep - en) * yi;
    }
    return (p_quad - n_dot * n_dot / sum_p) / (tau * sum_p);
}

double lipschitz_constant(SmootherKind kind, double tau) {
    require_tau(tau);
    switch (kind) {
        case SmootherKind::Charbonnier:
        case SmootherKind::Huber:
        case SmootherKind::LogSumExp:
            return 1.0 / tau;
    }
    throw std::invalid_argument("unknown smoother kind");
}

}  // namespace lram
