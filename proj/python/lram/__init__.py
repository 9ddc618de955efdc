"""Low-rank matrix approximation in entrywise l1/linf norms.

Thin wrapper over the C++ core: smoothed non-convex solvers (solve_l1,
solve_linf), SVD and column-sampling baselines, instance generators, and
MatrixMarket I/O.
"""

from lram._core import (
    ParseError,
    NumericalError,
    DivergenceError,
    charbonnier_grad,
    charbonnier_value,
    column_sampling_l1,
    dist_to_target,
    entrywise_l1_norm,
    entrywise_linf_norm,
    gen_quantized,
    gen_sign,
    gen_uniform,
    huber_value,
    load_matrix_market,
    logsumexp_grad,
    logsumexp_value,
    save_matrix_market,
    solve_l1,
    solve_linf,
    svd_baseline,
    truncated_svd,
)

__all__ = [
    "ParseError",
    "NumericalError",
    "DivergenceError",
    "charbonnier_grad",
    "charbonnier_value",
    "column_sampling_l1",
    "dist_to_target",
    "entrywise_l1_norm",
    "entrywise_linf_norm",
    "gen_quantized",
    "gen_sign",
    "gen_uniform",
    "huber_value",
    "load_matrix_market",
    "logsumexp_grad",
    "logsumexp_value",
    "save_matrix_market",
    "solve_l1",
    "solve_linf",
    "svd_baseline",
    "truncated_svd",
]
