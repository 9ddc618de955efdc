#pragma once

#include <variant>

#include "lram/bfgd.hpp"

namespace lram {

/// Problem quantities the (1+eps)-OPT schedules are derived from.
struct TheoryParams {
    double opt_estimate = 1.0;   // OPT, or an upper bound on it
    double xstar_fro_sq = 1.0;   // ||X*||_F^2
    double sigma_r_hat = 1.0;    // sigma_r of the smoothed optimum
    double epsilon = 0.5;
    double iteration_constant = 10.0;  // hidden constant in the T bound
};

/// Fixed experimental constants.
struct PracticalParams {
    double tau = 1e-3;
    double lambda = 1e-3;
    std::size_t max_iters = 40000;
};

using SolveMode = std::variant<TheoryParams, PracticalParams>;

struct Schedule {
    double tau;
    double lambda;
    double lipschitz_estimate;
    std::size_t max_iters;
};

/// tau = eps*OPT/(3mn), lambda = 2*eps*OPT/(3*||X*||_F^2), L-hat = 1/tau
/// + lambda, T from the two-term iteration bound (capped at 1e6).
Schedule derive_l1_schedule(const TheoryParams& p, std::size_t m, std::size_t n);

/// Same shape with tau = eps*OPT/(3*log(2mn)) and log(mn) replacing mn
/// in the first T term.
Schedule derive_linf_schedule(const TheoryParams& p, std::size_t m, std::size_t n);

struct SolveOptions {
    InitMode init = InitMode::SvdInit;
    std::size_t trace_every = 100;
    bool stall_detection = false;
};

SolveReport solve_l1(const DenseMatrix& m, std::size_t r, const SolveMode& mode,
                     const SolveOptions& opts = {});

SolveReport solve_linf(const DenseMatrix& m, std::size_t r, const SolveMode& mode,
                       const SolveOptions& opts = {});

}  // namespace lram
