#include "lram/bfgd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace lram {

namespace {

FactorPair apply_rule(const FactorPair& f, const DenseMatrix& g, double eta, double gamma) {
    DenseMatrix du = matmul(g, f.v);        // G V
    DenseMatrix dv = matmul_at(g, f.u);     // G^T U
    if (gamma != 0.0) {
        const DenseMatrix b = sub(matmul_at(f.u, f.u), matmul_at(f.v, f.v));
        du = add(du, scale(matmul(f.u, b), gamma));
        dv = sub(dv, scale(matmul(f.v, b), gamma));
    }
    return {sub(f.u, scale(du, eta)), sub(f.v, scale(dv, eta))};
}

// In-place kernels for the solver loop; same accumulation order as the
// allocating matmul/matmul_at/matmul_bt, so results match to the bit.
void product_into(const FactorPair& f, DenseMatrix& x) {
    const std::size_t m = f.u.rows(), n = f.v.rows(), r = f.u.cols();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < r; ++k) s += f.u(i, k) * f.v(j, k);
            x(i, j) = s;
        }
    }
}

// out = a * b, a: m x n, b: n x r.
void matmul_into(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out) {
    std::fill(out.data().begin(), out.data().end(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
}

// out = a^T * b, a: m x n, b: m x r.
void matmul_at_into(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out) {
    std::fill(out.data().begin(), out.data().end(), 0.0);
    for (std::size_t k = 0; k < a.rows(); ++k) {
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = a(k, i);
            if (aki == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aki * b(k, j);
        }
    }
}

double trace_error(TraceNorm norm, const DenseMatrix& residual) {
    switch (norm) {
        case TraceNorm::EntrywiseL1: return entrywise_l1_norm(residual);
        case TraceNorm::EntrywiseLinf: return entrywise_linf_norm(residual);
        case TraceNorm::Frobenius: return frobenius_norm(residual);
        case TraceNorm::None: return 0.0;
    }
    return 0.0;
}

}  // namespace

FactorPair gradient_init(const SmoothedObjective& obj, std::size_t r, double l_hat) {
    if (r < 1 || r > std::min(obj.m.rows(), obj.m.cols()))
        throw std::invalid_argument("gradient_init: rank out of range");
    if (!(l_hat > 0.0)) throw std::invalid_argument("gradient_init: L-hat must be positive");
    const DenseMatrix x0 =
        scale(objective_grad_x(obj, DenseMatrix::zeros(obj.m.rows(), obj.m.cols())),
              -1.0 / l_hat);
    if (entrywise_linf_norm(x0) == 0.0) {
        // Stationary origin; start from zero factors.
        return {DenseMatrix::zeros(obj.m.rows(), r), DenseMatrix::zeros(obj.m.cols(), r)};
    }
    return balanced_factors(x0, r);
}

FactorPair svd_init(const DenseMatrix& m, std::size_t r) {
    if (r < 1 || r > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("svd_init: rank out of range");
    return balanced_factors(m, r);
}

double step_size(const FactorPair& f, const DenseMatrix& grad_x, double c, double l_hat,
                 StepSizeState* state, bool frobenius_grad_norm) {
    const DenseMatrix stack = vstack(f.u, f.v);
    const double sigma_stack =
        spectral_norm(stack, 1e-6, 1000, state ? &state->stack_vec : nullptr);
    const double grad_norm =
        frobenius_grad_norm
            ? frobenius_norm(grad_x)
            : spectral_norm(grad_x, 1e-6, 1000, state ? &state->grad_vec : nullptr);
    const double denom = 15.0 * l_hat * sigma_stack * sigma_stack + 3.0 * grad_norm;
    if (denom == 0.0)
        throw std::domain_error("step_size: stationary start (zero factors and zero gradient)");
    return c / denom;
}

FactorPair rule1_update(const FactorPair& f, const SmoothedObjective& obj, double eta) {
    return apply_rule(f, objective_grad_x(obj, f.product()), eta, 0.0);
}

FactorPair rule2_update(const FactorPair& f, const SmoothedObjective& obj, double eta,
                        double gamma) {
    return apply_rule(f, objective_grad_x(obj, f.product()), eta, gamma);
}

SolveReport run_bfgd(const SmoothedObjective& obj, const SolverConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();

    SolveReport report;
    FactorPair f = cfg.init == InitMode::SvdInit
                       ? svd_init(obj.m, cfg.rank)
                       : gradient_init(obj, cfg.rank, cfg.lipschitz_estimate);

    const double gamma = cfg.rule == UpdateRule::Rule2 ? cfg.gamma : 0.0;
    StepSizeState state;
    double prev_value = 0.0;
    std::size_t stall_count = 0;

    auto record = [&](std::size_t iter, double value, const DenseMatrix& x) {
        report.objective_trace.emplace_back(iter, value);
        if (cfg.trace_norm != TraceNorm::None)
            report.error_trace.emplace_back(iter, trace_error(cfg.trace_norm, sub(obj.m, x)));
    };

    // Buffers reused across iterations; the loop itself allocates only at
    // trace points and inside spectral_norm's warm-started power iteration.
    const std::size_t m = obj.m.rows(), n = obj.m.cols(), r = cfg.rank;
    DenseMatrix x(m, n), g(m, n);
    DenseMatrix du(m, r), dv(n, r), ub(m, r), vb(n, r);
    DenseMatrix stack(m + n, r);

    std::size_t iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
        product_into(f, x);
        const double value = objective_value_and_grad(obj, x, g);
        if (!std::isfinite(value)) {
            report.factors = f;
            report.iterations_run = iter;
            throw divergence_error("run_bfgd: non-finite objective at iteration " +
                                       std::to_string(iter),
                                   report);
        }
        if (cfg.descent_check && iter > 0 &&
            value > prev_value + 1e-10 * std::max(1.0, std::abs(prev_value))) {
            report.factors = f;
            report.iterations_run = iter;
            throw divergence_error("run_bfgd: objective increased at iteration " +
                                       std::to_string(iter),
                                   report);
        }
        if (iter % cfg.trace_every == 0) record(iter, value, x);

        if (cfg.stall_detection && iter > 0) {
            if (std::abs(value - prev_value) <= cfg.stall_rel_tol * std::max(1.0, std::abs(value)))
                ++stall_count;
            else
                stall_count = 0;
            if (stall_count >= cfg.stall_window) {
                report.termination = Termination::Stalled;
                break;
            }
        }
        prev_value = value;

        // eta = C / (15 L-hat sigma1([U;V])^2 + 3 sigma1(grad)), as in
        // step_size(), but against the preallocated stack buffer.
        std::copy(f.u.data().begin(), f.u.data().end(), stack.data().begin());
        std::copy(f.v.data().begin(), f.v.data().end(),
                  stack.data().begin() + static_cast<std::ptrdiff_t>(f.u.size()));
        const double sigma_stack = spectral_norm(stack, 1e-6, 1000, &state.stack_vec);
        const double grad_norm = cfg.step_uses_frobenius_grad_norm
                                     ? frobenius_norm(g)
                                     : spectral_norm(g, 1e-6, 1000, &state.grad_vec);
        const double denom = 15.0 * cfg.lipschitz_estimate * sigma_stack * sigma_stack +
                             3.0 * grad_norm;
        if (denom == 0.0) {
            report.termination = Termination::Stalled;
            break;
        }
        const double eta = cfg.step_constant / denom;
        report.step_trace.push_back(eta);

        matmul_into(g, f.v, du);     // G V
        matmul_at_into(g, f.u, dv);  // G^T U
        if (gamma != 0.0) {
            const DenseMatrix b = sub(matmul_at(f.u, f.u), matmul_at(f.v, f.v));
            matmul_into(f.u, b, ub);
            matmul_into(f.v, b, vb);
            for (std::size_t i = 0; i < du.size(); ++i) du.data()[i] += gamma * ub.data()[i];
            for (std::size_t i = 0; i < dv.size(); ++i) dv.data()[i] -= gamma * vb.data()[i];
        }
        for (std::size_t i = 0; i < du.size(); ++i) f.u.data()[i] -= eta * du.data()[i];
        for (std::size_t i = 0; i < dv.size(); ++i) f.v.data()[i] -= eta * dv.data()[i];
    }

    report.factors = f;
    report.iterations_run = iter;
    {
        product_into(f, x);
        record(iter, objective_value(obj, x), x);
    }
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

double dist_to_target(const FactorPair& f, const DenseMatrix& target, std::size_t r) {
    const FactorPair ref = balanced_factors(target, r);
    const DenseMatrix w = vstack(ref.u, ref.v);
    const DenseMatrix z = vstack(f.u, f.v);
    if (!w.same_shape(z)) throw std::invalid_argument("dist_to_target: shape mismatch");

    // Procrustes: R = A B^T from the SVD of W^T Z.
    const TruncatedSVD svd = full_svd(matmul_at(w, z));
    const DenseMatrix rot = matmul_bt(svd.left, svd.right);
    return frobenius_norm(sub(z, matmul(w, rot)));
}

}  // namespace lram
