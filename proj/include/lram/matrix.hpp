#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace lram {

/// Dense real matrix, row-major flat storage.
///
/// All exported operations keep entries finite; constructing from or
/// producing non-finite data throws std::invalid_argument.
class DenseMatrix {
public:
    DenseMatrix() : rows_(0), cols_(0) {}
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> data);

    static DenseMatrix zeros(std::size_t rows, std::size_t cols);
    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const DenseMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool all_finite() const;
    /// Throws std::invalid_argument if any entry is NaN/Inf.
    void require_finite(const char* what) const;

    DenseMatrix transpose() const;

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

// Entrywise norms (not the induced ones).
double entrywise_l1_norm(const DenseMatrix& x);
double entrywise_linf_norm(const DenseMatrix& x);
double frobenius_norm(const DenseMatrix& x);

// Dense kernels. Shape mismatches throw std::invalid_argument.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
/// a^T * b
DenseMatrix matmul_at(const DenseMatrix& a, const DenseMatrix& b);
/// a * b^T
DenseMatrix matmul_bt(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix sub(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scale(const DenseMatrix& a, double alpha);
DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b);

/// Vertical stack [a; b]; column counts must agree.
DenseMatrix vstack(const DenseMatrix& a, const DenseMatrix& b);

/// <a, b> = sum_ij a_ij * b_ij
double dot(const DenseMatrix& a, const DenseMatrix& b);

/// Rank-r factor pair (U: m x r, V: n x r) representing X = U V^T.
struct FactorPair {
    DenseMatrix u;
    DenseMatrix v;

    std::size_t rank() const { return u.cols(); }
    DenseMatrix product() const { return matmul_bt(u, v); }
};

}  // namespace lram
