#include "lram/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lram {

namespace {

void require_shape(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("shape mismatch in ") + what);
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("DenseMatrix: zero dimension");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("DenseMatrix: zero dimension");
    if (data_.size() != rows * cols)
        throw std::invalid_argument("DenseMatrix: entries length != rows*cols");
    require_finite("DenseMatrix construction");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> data) {
    rows_ = data.size();
    cols_ = rows_ ? data.begin()->size() : 0;
    if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("DenseMatrix: empty initializer");
    data_.reserve(rows_ * cols_);
    for (const auto& row : data) {
        if (row.size() != cols_) throw std::invalid_argument("DenseMatrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite("DenseMatrix construction");
}

DenseMatrix DenseMatrix::zeros(std::size_t rows, std::size_t cols) {
    return DenseMatrix(rows, cols);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool DenseMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void DenseMatrix::require_finite(const char* what) const {
    if (!all_finite())
        throw std::invalid_argument(std::string("non-finite entries in ") + what);
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double entrywise_l1_norm(const DenseMatrix& x) {
    double s = 0.0;
    for (double v : x.data()) s += std::abs(v);
    return s;
}

double entrywise_linf_norm(const DenseMatrix& x) {
    double m = 0.0;
    for (double v : x.data()) m = std::max(m, std::abs(v));
    return m;
}

double frobenius_norm(const DenseMatrix& x) {
    double s = 0.0;
    for (double v : x.data()) s += v * v;
    return std::sqrt(s);
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    require_shape(a.cols() == b.rows(), "matmul");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    c.require_finite("matmul result");
    return c;
}

DenseMatrix matmul_at(const DenseMatrix& a, const DenseMatrix& b) {
    require_shape(a.rows() == b.rows(), "matmul_at");
    DenseMatrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = a(k, i);
            if (aki == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aki * b(k, j);
        }
    }
    c.require_finite("matmul_at result");
    return c;
}

DenseMatrix matmul_bt(const DenseMatrix& a, const DenseMatrix& b) {
    require_shape(a.cols() == b.cols(), "matmul_bt");
    DenseMatrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(j, k);
            c(i, j) = s;
        }
    }
    c.require_finite("matmul_bt result");
    return c;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    require_shape(a.same_shape(b), "add");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] += b.data()[i];
    c.require_finite("add result");
    return c;
}

DenseMatrix sub(const DenseMatrix& a, const DenseMatrix& b) {
    require_shape(a.same_shape(b), "sub");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] -= b.data()[i];
    c.require_finite("sub result");
    return c;
}

DenseMatrix scale(const DenseMatrix& a, double alpha) {
    DenseMatrix c = a;
    for (double& v : c.data()) v *= alpha;
    c.require_finite("scale result");
    return c;
}

DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
    require_shape(a.same_shape(b), "hadamard");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] *= b.data()[i];
    c.require_finite("hadamard result");
    return c;
}

DenseMatrix vstack(const DenseMatrix& a, const DenseMatrix& b) {
    require_shape(a.cols() == b.cols(), "vstack");
    DenseMatrix c(a.rows() + b.rows(), a.cols());
    std::copy(a.data().begin(), a.data().end(), c.data().begin());
    std::copy(b.data().begin(), b.data().end(), c.data().begin() + a.size());
    return c;
}

double dot(const DenseMatrix& a, const DenseMatrix& b) {
    require_shape(a.same_shape(b), "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * b.data()[i];
    return s;
}

}  // namespace lram
