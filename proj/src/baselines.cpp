#include "lram/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lram/rng.hpp"
#include "lram/svd.hpp"

namespace lram {

namespace {

double lp_error_of(const DenseMatrix& m, const FactorPair& f, NormP p) {
    const DenseMatrix res = sub(m, f.product());
    return p == NormP::L1 ? entrywise_l1_norm(res) : entrywise_linf_norm(res);
}

/// In-place Gaussian elimination with partial pivoting; returns false on
/// a pivot below `pivot_tol`.
bool solve_linear(std::vector<double> a, std::vector<double> b, std::size_t n,
                  std::vector<double>& out, double pivot_tol) {
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
        if (std::abs(a[piv * n + k]) < pivot_tol) return false;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = a[i * n + k] / a[k * n + k];
            if (factor == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) a[i * n + j] -= factor * a[k * n + j];
            b[i] -= factor * b[k];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= a[k * n + j] * out[j];
        out[k] = s / a[k * n + k];
    }
    return true;
}

/// Approximate argmin_v || y - U v ||_1 by IRLS with weights
/// 1/max(|residual|, delta).
bool irls_l1_fit(const DenseMatrix& u, const std::vector<double>& y, std::vector<double>& v,
                 double ridge) {
    const std::size_t m = u.rows(), r = u.cols();
    const double delta = 1e-8;
    const std::size_t inner_iters = 50;

    std::vector<double> w(m, 1.0);
    std::vector<double> a(r * r), b(r);
    for (std::size_t it = 0; it < inner_iters; ++it) {
        std::fill(a.begin(), a.end(), 0.0);
        std::fill(b.begin(), b.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t p = 0; p < r; ++p) {
                const double wup = w[i] * u(i, p);
                b[p] += wup * y[i];
                for (std::size_t q = 0; q < r; ++q) a[p * r + q] += wup * u(i, q);
            }
        }
        for (std::size_t p = 0; p < r; ++p) a[p * r + p] += ridge;
        if (!solve_linear(a, b, r, v, 1e-12)) return false;
        for (std::size_t i = 0; i < m; ++i) {
            double resid = y[i];
            for (std::size_t p = 0; p < r; ++p) resid -= u(i, p) * v[p];
            w[i] = 1.0 / std::max(std::abs(resid), delta);
        }
    }
    return true;
}

bool columns_full_rank(const DenseMatrix& u) {
    // Gram determinant check via elimination on U^T U.
    const std::size_t r = u.cols();
    std::vector<double> gram(r * r, 0.0);
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t p = 0; p < r; ++p)
            for (std::size_t q = 0; q < r; ++q) gram[p * r + q] += u(i, p) * u(i, q);
    std::vector<double> dummy_b(r, 0.0), dummy_x;
    return solve_linear(gram, dummy_b, r, dummy_x, 1e-10);
}

}  // namespace

BaselineResult svd_baseline(const DenseMatrix& m, std::size_t r, NormP p) {
    if (r < 1 || r > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("svd_baseline: rank out of range");
    const auto t0 = std::chrono::steady_clock::now();
    BaselineResult out;
    out.method = BaselineMethod::SvdBaseline;
    out.factors = balanced_factors(m, r);
    out.lp_error = lp_error_of(m, out.factors, p);
    out.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

BaselineResult column_sampling_l1(const DenseMatrix& m, std::size_t r, std::size_t trials,
                                  std::uint64_t seed) {
    if (r < 1 || r > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("column_sampling_l1: rank out of range");
    if (trials < 1) throw std::invalid_argument("column_sampling_l1: trials must be >= 1");

    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t rows = m.rows(), cols = m.cols();
    Rng rng(seed);

    BaselineResult best;
    best.method = BaselineMethod::ColumnSampling;
    best.lp_error = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> indices(cols);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        DenseMatrix u(rows, r);
        bool usable = false;
        double ridge = 0.0;
        for (std::size_t redraw = 0; redraw <= 10; ++redraw) {
            // Partial Fisher-Yates: r distinct column indices.
            for (std::size_t i = 0; i < cols; ++i) indices[i] = i;
            for (std::size_t i = 0; i < r; ++i)
                std::swap(indices[i], indices[i + rng.below(cols - i)]);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < r; ++j) u(i, j) = m(i, indices[j]);
            if (columns_full_rank(u)) {
                usable = true;
                break;
            }
            if (redraw == 10) {
                usable = true;
                ridge = 1e-10;  // ridge fallback in the normal equations
            }
        }
        if (!usable) continue;

        DenseMatrix v(cols, r);
        std::vector<double> col(rows), vrow;
        bool fit_ok = true;
        for (std::size_t j = 0; j < cols; ++j) {
            for (std::size_t i = 0; i < rows; ++i) col[i] = m(i, j);
            if (!irls_l1_fit(u, col, vrow, ridge)) {
                fit_ok = false;
                break;
            }
            for (std::size_t p = 0; p < r; ++p) v(j, p) = vrow[p];
        }
        if (!fit_ok) continue;

        FactorPair f{u, v};
        const double err = lp_error_of(m, f, NormP::L1);
        if (err < best.lp_error) {
            best.factors = std::move(f);
            best.lp_error = err;
        }
    }
    if (!std::isfinite(best.lp_error))
        throw numerical_error("column_sampling_l1: no usable trial", best.lp_error);

    best.lp_error = lp_error_of(m, best.factors, NormP::L1);
    best.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return best;
}

}  // namespace lram
