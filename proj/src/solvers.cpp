#include "lram/solvers.hpp"

#include <cmath>
#include <stdexcept>

namespace lram {

namespace {

constexpr std::size_t kIterationCap = 1000000;

void require_params(const TheoryParams& p) {
    if (!(p.opt_estimate > 0.0 && p.xstar_fro_sq > 0.0 && p.sigma_r_hat > 0.0 &&
          p.epsilon > 0.0))
        throw std::invalid_argument("TheoryParams: all quantities must be positive");
}

std::size_t iteration_budget(const TheoryParams& p, double first_term_scale) {
    const double eps_opt = p.epsilon * p.opt_estimate;
    const double t = p.iteration_constant * p.sigma_r_hat *
                     (first_term_scale / (eps_opt * eps_opt) + 1.0 / p.xstar_fro_sq);
    if (t >= static_cast<double>(kIterationCap)) return kIterationCap;
    return static_cast<std::size_t>(std::ceil(t));
}

Schedule finish_schedule(const TheoryParams& p, double tau, double first_term_scale) {
    Schedule s;
    s.tau = tau;
    s.lambda = 2.0 * p.epsilon * p.opt_estimate / (3.0 * p.xstar_fro_sq);
    s.lipschitz_estimate = 1.0 / s.tau + s.lambda;
    s.max_iters = iteration_budget(p, first_term_scale);
    return s;
}

SolveReport run(const DenseMatrix& m, std::size_t r, const SolveMode& mode,
                const SolveOptions& opts, ObjectiveKind kind, TraceNorm norm,
                const Schedule& sched) {
    SmoothedObjective obj{m, kind, sched.tau, sched.lambda};

    SolverConfig cfg;
    cfg.rank = r;
    cfg.max_iters = sched.max_iters;
    cfg.lipschitz_estimate = sched.lipschitz_estimate;
    cfg.rule = sched.lambda > 0.0 ? UpdateRule::Rule2 : UpdateRule::Rule1;
    cfg.gamma = 0.25;
    cfg.step_constant = 1.0;
    cfg.init = opts.init;
    cfg.trace_every = opts.trace_every;
    cfg.trace_norm = norm;
    cfg.stall_detection = opts.stall_detection;
    (void)mode;
    return run_bfgd(obj, cfg);
}

Schedule schedule_for(const DenseMatrix& m, const SolveMode& mode, bool linf) {
    if (const auto* practical = std::get_if<PracticalParams>(&mode)) {
        return {practical->tau, practical->lambda,
                1.0 / practical->tau + practical->lambda, practical->max_iters};
    }
    const auto& theory = std::get<TheoryParams>(mode);
    return linf ? derive_linf_schedule(theory, m.rows(), m.cols())
                : derive_l1_schedule(theory, m.rows(), m.cols());
}

}  // namespace

Schedule derive_l1_schedule(const TheoryParams& p, std::size_t m, std::size_t n) {
    require_params(p);
    const double mn = static_cast<double>(m) * static_cast<double>(n);
    const double tau = p.epsilon * p.opt_estimate / (3.0 * mn);
    return finish_schedule(p, tau, mn);
}

Schedule derive_linf_schedule(const TheoryParams& p, std::size_t m, std::size_t n) {
    require_params(p);
    const double mn = static_cast<double>(m) * static_cast<double>(n);
    const double tau = p.epsilon * p.opt_estimate / (3.0 * std::log(2.0 * mn));
    return finish_schedule(p, tau, std::log(mn));
}

SolveReport solve_l1(const DenseMatrix& m, std::size_t r, const SolveMode& mode,
                     const SolveOptions& opts) {
    if (r < 1 || r > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("solve_l1: rank out of range");
    return run(m, r, mode, opts, ObjectiveKind::Charbonnier, TraceNorm::EntrywiseL1,
               schedule_for(m, mode, false));
}

SolveReport solve_linf(const DenseMatrix& m, std::size_t r, const SolveMode& mode,
                       const SolveOptions& opts) {
    if (r < 1 || r > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("solve_linf: rank out of range");
    return run(m, r, mode, opts, ObjectiveKind::LogSumExp, TraceNorm::EntrywiseLinf,
               schedule_for(m, mode, true));
}

}  // namespace lram
