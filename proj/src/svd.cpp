#include "lram/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lram {

namespace {

// splitmix64; used for the deterministic pseudo-random start vector.
std::uint64_t mix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double unit_uniform(std::uint64_t& state) {
    return static_cast<double>(mix64(state) >> 11) * 0x1.0p-53;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void normalize(std::vector<double>& v) {
    const double n = norm2(v);
    if (n > 0.0)
        for (double& x : v) x /= n;
}

// y = X v (v in R^cols), then z = X^T y; returns ||y||.
double gram_step(const DenseMatrix& x, std::vector<double>& v, std::vector<double>& y) {
    const std::size_t m = x.rows(), n = x.cols();
    y.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += x(i, j) * v[j];
        y[i] = s;
    }
    const double sigma = norm2(y);
    std::vector<double> z(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double yi = y[i];
        if (yi == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) z[j] += x(i, j) * yi;
    }
    v = std::move(z);
    normalize(v);
    return sigma;
}

double power_iteration(const DenseMatrix& x, std::vector<double> v0, double tol,
                       std::size_t max_iters, bool& converged, std::vector<double>* out_vec) {
    std::vector<double> v = std::move(v0);
    std::vector<double> y;
    normalize(v);
    double sigma = 0.0;
    converged = false;
    for (std::size_t it = 0; it < max_iters; ++it) {
        const double next = gram_step(x, v, y);
        if (next == 0.0) {  // X v in the null space; caller restarts or X = 0
            sigma = 0.0;
            break;
        }
        if (it > 0 && std::abs(next - sigma) <= tol * next) {
            sigma = next;
            converged = true;
            break;
        }
        sigma = next;
    }
    if (out_vec) *out_vec = v;
    return sigma;
}

}  // namespace

double spectral_norm(const DenseMatrix& x, double tol, std::size_t max_iters,
                     std::vector<double>* warm_start) {
    if (tol <= 0.0) throw std::invalid_argument("spectral_norm: tol must be positive");
    x.require_finite("spectral_norm input");

    // Work on the smaller gram side.
    const bool transposed = x.cols() > x.rows();
    const DenseMatrix& work = transposed ? x.transpose() : x;
    const std::size_t n = work.cols();

    if (entrywise_linf_norm(x) == 0.0) return 0.0;

    std::vector<double> v0;
    if (warm_start && warm_start->size() == n) {
        v0 = *warm_start;
    } else {
        std::uint64_t state = 0x5deece66dULL ^ (x.rows() * 0x10001ULL + x.cols());
        v0.resize(n);
        for (double& e : v0) e = unit_uniform(state) - 0.5;
    }

    bool converged = false;
    double sigma = power_iteration(work, v0, tol, max_iters, converged,
                                   warm_start ? warm_start : nullptr);
    if (!converged) {
        // Deterministic fallback restart from the all-ones direction.
        std::vector<double> ones(n, 1.0);
        sigma = power_iteration(work, ones, tol, max_iters, converged,
                                warm_start ? warm_start : nullptr);
    }
    if (!converged)
        throw numerical_error("spectral_norm: power iteration did not converge", sigma);
    return sigma;
}

DenseMatrix TruncatedSVD::reconstruct() const {
    DenseMatrix scaled = left;
    for (std::size_t i = 0; i < scaled.rows(); ++i)
        for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(i, j) *= singulars[j];
    return matmul_bt(scaled, right);
}

TruncatedSVD full_svd(const DenseMatrix& x) {
    x.require_finite("full_svd input");
    const bool transposed = x.cols() > x.rows();
    DenseMatrix a = transposed ? x.transpose() : x;
    const std::size_t m = a.rows(), n = a.cols();

    DenseMatrix v = DenseMatrix::identity(n);

    // One-sided Jacobi: orthogonalize column pairs in cyclic sweeps.
    const double tol = 1e-14;
    const std::size_t max_sweeps = 64;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    app += a(i, p) * a(i, p);
                    aqq += a(i, q) * a(i, q);
                    apq += a(i, p) * a(i, q);
                }
                if (std::abs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double ap = a(i, p), aq = a(i, q);
                    a(i, p) = c * ap - s * aq;
                    a(i, q) = s * ap + c * aq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    // Column norms are the singular values; sort non-increasing.
    std::vector<double> sig(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += a(i, j) * a(i, j);
        sig[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sig[i] > sig[j]; });

    DenseMatrix u(m, n), vv(n, n);
    std::vector<double> singulars(n);
    const double rank_floor = 1e-300;
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t j = order[jj];
        singulars[jj] = sig[j];
        for (std::size_t i = 0; i < n; ++i) vv(i, jj) = v(i, j);
        if (sig[j] > rank_floor) {
            for (std::size_t i = 0; i < m; ++i) u(i, jj) = a(i, j) / sig[j];
        }
    }

    // Complete left columns for (near-)zero singular values so the
    // orthonormality invariant holds: Gram-Schmidt over standard basis.
    for (std::size_t jj = 0; jj < n; ++jj) {
        if (singulars[jj] > rank_floor) continue;
        for (std::size_t cand = 0; cand < m; ++cand) {
            std::vector<double> e(m, 0.0);
            e[cand] = 1.0;
            for (std::size_t k = 0; k < jj; ++k) {
                double proj = 0.0;
                for (std::size_t i = 0; i < m; ++i) proj += e[i] * u(i, k);
                for (std::size_t i = 0; i < m; ++i) e[i] -= proj * u(i, k);
            }
            const double nrm = norm2(e);
            if (nrm > 1e-6) {
                for (std::size_t i = 0; i < m; ++i) u(i, jj) = e[i] / nrm;
                break;
            }
        }
        singulars[jj] = 0.0;
    }

    TruncatedSVD out;
    if (transposed) {
        out.left = std::move(vv);
        out.right = std::move(u);
    } else {
        out.left = std::move(u);
        out.right = std::move(vv);
    }
    out.singulars = std::move(singulars);
    return out;
}

TruncatedSVD truncated_svd(const DenseMatrix& x, std::size_t k) {
    const std::size_t kmax = std::min(x.rows(), x.cols());
    if (k < 1 || k > kmax) throw std::invalid_argument("truncated_svd: k out of range");
    TruncatedSVD full = full_svd(x);

    TruncatedSVD out;
    out.left = DenseMatrix(x.rows(), k);
    out.right = DenseMatrix(x.cols(), k);
    out.singulars.assign(full.singulars.begin(), full.singulars.begin() + k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < x.rows(); ++i) out.left(i, j) = full.left(i, j);
        for (std::size_t i = 0; i < x.cols(); ++i) out.right(i, j) = full.right(i, j);
    }
    return out;
}

FactorPair balanced_factors(const DenseMatrix& x, std::size_t r) {
    TruncatedSVD svd = truncated_svd(x, r);
    FactorPair f{DenseMatrix(x.rows(), r), DenseMatrix(x.cols(), r)};
    for (std::size_t j = 0; j < r; ++j) {
        const double root = std::sqrt(svd.singulars[j]);
        for (std::size_t i = 0; i < x.rows(); ++i) f.u(i, j) = svd.left(i, j) * root;
        for (std::size_t i = 0; i < x.cols(); ++i) f.v(i, j) = svd.right(i, j) * root;
    }
    return f;
}

}  // namespace lram
