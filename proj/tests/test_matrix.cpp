#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "lram/matrix.hpp"
#include "test_support.hpp"

using namespace lram;
using test::random_matrix;

TEST_CASE("entrywise l1 norm") {
    CHECK(entrywise_l1_norm(DenseMatrix::zeros(3, 3)) == 0.0);
    CHECK(entrywise_l1_norm(DenseMatrix{{1, -2}, {3, -4}}) == 10.0);

    // 5x5 with +-1 entries sums to 25.
    Rng rng(7);
    DenseMatrix x(5, 5);
    double brute = 0.0;
    for (double& v : x.data()) v = (rng.next_u64() & 1) ? 1.0 : -1.0;
    for (double v : x.data()) brute += std::abs(v);
    CHECK(entrywise_l1_norm(x) == brute);
    CHECK(entrywise_l1_norm(x) == 25.0);
}

TEST_CASE("entrywise linf norm") {
    CHECK(entrywise_linf_norm(DenseMatrix::zeros(2, 4)) == 0.0);
    CHECK(entrywise_linf_norm(DenseMatrix{{1, -2}, {3, -4}}) == 4.0);
    CHECK(entrywise_linf_norm(scale(DenseMatrix::identity(6), 2.5)) == 2.5);
}

TEST_CASE("frobenius norm") {
    CHECK(frobenius_norm(DenseMatrix::zeros(2, 2)) == 0.0);
    CHECK(frobenius_norm(DenseMatrix{{3, 4}}) == doctest::Approx(5.0));

    Rng rng(11);
    const DenseMatrix x = random_matrix(4, 4, rng);
    // trace(X^T X) route
    const DenseMatrix gram = matmul_at(x, x);
    double tr = 0.0;
    for (std::size_t i = 0; i < 4; ++i) tr += gram(i, i);
    CHECK(frobenius_norm(x) == doctest::Approx(std::sqrt(tr)).epsilon(1e-12));
}

TEST_CASE("hadamard") {
    Rng rng(3);
    const DenseMatrix x = random_matrix(3, 4, rng);
    DenseMatrix ones(3, 4);
    for (double& v : ones.data()) v = 1.0;

    const DenseMatrix id = hadamard(x, ones);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(id.data()[i] == x.data()[i]);

    const DenseMatrix z = hadamard(x, DenseMatrix::zeros(3, 4));
    CHECK(entrywise_linf_norm(z) == 0.0);

    const DenseMatrix h = hadamard(DenseMatrix{{1, 2}, {3, 4}}, DenseMatrix{{2, 0}, {1, -1}});
    CHECK(h(0, 0) == 2.0);
    CHECK(h(0, 1) == 0.0);
    CHECK(h(1, 0) == 3.0);
    CHECK(h(1, 1) == -4.0);

    CHECK_THROWS_AS(hadamard(x, DenseMatrix::zeros(4, 3)), std::invalid_argument);
}

TEST_CASE("dense kernels") {
    Rng rng(5);
    const DenseMatrix a = random_matrix(3, 4, rng);
    const DenseMatrix b = random_matrix(4, 2, rng);

    const DenseMatrix ai = matmul(a, DenseMatrix::identity(4));
    CHECK(frobenius_norm(sub(ai, a)) == doctest::Approx(0.0));

    // (A B)^T == B^T A^T
    const DenseMatrix lhs = matmul(a, b).transpose();
    const DenseMatrix rhs = matmul(b.transpose(), a.transpose());
    CHECK(frobenius_norm(sub(lhs, rhs)) < 1e-14);

    CHECK(entrywise_linf_norm(scale(a, 0.0)) == 0.0);
    CHECK_THROWS_AS(matmul(a, a), std::invalid_argument);
    CHECK_THROWS_AS(add(a, b), std::invalid_argument);
}

TEST_CASE("matmul_at and matmul_bt agree with explicit transposes") {
    Rng rng(9);
    const DenseMatrix a = random_matrix(5, 3, rng);
    const DenseMatrix b = random_matrix(5, 2, rng);
    CHECK(frobenius_norm(sub(matmul_at(a, b), matmul(a.transpose(), b))) < 1e-14);
    const DenseMatrix c = random_matrix(4, 3, rng);
    CHECK(frobenius_norm(sub(matmul_bt(a, c), matmul(a, c.transpose()))) < 1e-14);
}

TEST_CASE("construction invariants") {
    CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(DenseMatrix(0, 2), std::invalid_argument);
}

TEST_CASE("norm ordering: linf <= l1, spectral <= fro") {
    Rng rng(21);
    for (int t = 0; t < 20; ++t) {
        const DenseMatrix x = random_matrix(3 + t % 5, 2 + t % 7, rng, -3.0, 3.0);
        CHECK(entrywise_linf_norm(x) <= entrywise_l1_norm(x));
    }
}
