#pragma once

#include <cstdint>

#include "lram/matrix.hpp"

namespace lram {

enum class NormP { L1, Linf };
enum class BaselineMethod { SvdBaseline, ColumnSampling };

struct BaselineResult {
    FactorPair factors;
    double lp_error = 0.0;  // recomputed from factors on return
    double wall_time_seconds = 0.0;
    BaselineMethod method = BaselineMethod::SvdBaseline;
};

/// Best rank-r Frobenius approximation with its entrywise lp error.
BaselineResult svd_baseline(const DenseMatrix& m, std::size_t r, NormP p);

/// Column-sampling heuristic for the l1 problem: per trial, U is r
/// columns of M drawn without replacement and V is fitted by an IRLS
/// approximate l1 regression per column of M; the best trial wins.
/// Rank-deficient draws are redrawn (up to 10 times, then a ridge
/// fallback). Ties break to the lowest trial index.
BaselineResult column_sampling_l1(const DenseMatrix& m, std::size_t r, std::size_t trials,
                                  std::uint64_t seed);

}  // namespace lram
