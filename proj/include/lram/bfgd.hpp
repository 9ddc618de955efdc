#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lram/matrix.hpp"
#include "lram/objective.hpp"
#include "lram/svd.hpp"

namespace lram {

enum class UpdateRule { Rule1, Rule2 };
enum class InitMode { GradientInit, SvdInit };
enum class TraceNorm { None, EntrywiseL1, EntrywiseLinf, Frobenius };
enum class Termination { BudgetExhausted, Stalled };

struct SolverConfig {
    std::size_t rank = 1;
    std::size_t max_iters = 40000;     // T
    double gamma = 0.25;               // Rule 2 balancing weight
    double step_constant = 1.0;        // C
    double lipschitz_estimate = 1.0;   // L-hat
    UpdateRule rule = UpdateRule::Rule2;
    InitMode init = InitMode::SvdInit;
    std::size_t trace_every = 100;
    TraceNorm trace_norm = TraceNorm::None;

    // Optional early stop: relative objective change below stall_rel_tol
    // for stall_window consecutive iterations.
    bool stall_detection = false;
    double stall_rel_tol = 1e-12;
    std::size_t stall_window = 100;

    // Per-step objective increase beyond 1e-10 (scaled by |f|) aborts the
    // run; disable for objectives known to be non-monotone.
    bool descent_check = true;

    // The step-size rule reads the spectral norm of the gradient; a
    // Frobenius reading is selectable since the notation is ambiguous.
    bool step_uses_frobenius_grad_norm = false;
};

struct SolveReport {
    FactorPair factors;
    std::vector<std::pair<std::size_t, double>> objective_trace;
    std::vector<std::pair<std::size_t, double>> error_trace;
    std::vector<double> step_trace;
    double wall_time_seconds = 0.0;
    std::size_t iterations_run = 0;
    Termination termination = Termination::BudgetExhausted;
};

/// Objective became non-finite (or the monotone-descent check tripped);
/// carries the last finite iterate.
class divergence_error : public std::runtime_error {
public:
    divergence_error(const std::string& msg, SolveReport last)
        : std::runtime_error(msg), last_finite(std::move(last)) {}
    SolveReport last_finite;
};

/// X0 = -grad f(0)/L-hat, split into balanced rank-r factors. A zero X0
/// yields zero factors.
FactorPair gradient_init(const SmoothedObjective& obj, std::size_t r, double l_hat);

/// Balanced factors of the best rank-r Frobenius approximation of M.
FactorPair svd_init(const DenseMatrix& m, std::size_t r);

/// Warm-started power-iteration state reused across solver iterations.
struct StepSizeState {
    std::vector<double> stack_vec;
    std::vector<double> grad_vec;
};

/// eta = C / (15 * L-hat * sigma1([U; V])^2 + 3 * sigma1(grad)).
/// Throws std::domain_error when the denominator vanishes (stationary
/// start at the origin).
double step_size(const FactorPair& f, const DenseMatrix& grad_x, double c, double l_hat,
                 StepSizeState* state = nullptr, bool frobenius_grad_norm = false);

FactorPair rule1_update(const FactorPair& f, const SmoothedObjective& obj, double eta);

/// Rule 1 plus the gamma * U (U^T U - V^T V) balancing correction; with
/// gamma == 0 the arithmetic path is identical to rule1_update.
FactorPair rule2_update(const FactorPair& f, const SmoothedObjective& obj, double eta,
                        double gamma);

SolveReport run_bfgd(const SmoothedObjective& obj, const SolverConfig& cfg);

/// Distance from the stacked factors [U; V] to the set of balanced
/// factorizations of the best rank-r approximation of `target`,
/// minimized over the r x r orthogonal rotation (Procrustes).
double dist_to_target(const FactorPair& f, const DenseMatrix& target, std::size_t r);

}  // namespace lram
