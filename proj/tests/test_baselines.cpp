#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "lram/baselines.hpp"
#include "lram/svd.hpp"
#include "test_support.hpp"

using namespace lram;
using test::random_matrix;
using test::random_rank_r;

TEST_CASE("svd baseline basics") {
    Rng rng(401);
    const DenseMatrix m = random_rank_r(8, 6, 2, rng);
    const BaselineResult res = svd_baseline(m, 2, NormP::L1);
    CHECK(res.lp_error < 1e-8);
    CHECK(res.method == BaselineMethod::SvdBaseline);

    DenseMatrix d(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 2.0;
    d(2, 2) = 1.0;
    const BaselineResult r2 = svd_baseline(d, 2, NormP::L1);
    CHECK(r2.lp_error == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("eckart-young: svd frobenius error lower-bounds other candidates") {
    Rng rng(402);
    const DenseMatrix m = random_matrix(10, 8, rng);
    const BaselineResult svd = svd_baseline(m, 3, NormP::L1);
    const double svd_fro = frobenius_norm(sub(m, svd.factors.product()));

    const BaselineResult cs = column_sampling_l1(m, 3, 5, 99);
    const double cs_fro = frobenius_norm(sub(m, cs.factors.product()));
    CHECK(svd_fro <= cs_fro + 1e-9);
}

TEST_CASE("column sampling recovers a column-spanned matrix") {
    // r orthogonal columns, each repeated; any draw of distinct copies spans.
    DenseMatrix m(6, 4);
    for (std::size_t i = 0; i < 3; ++i) m(i, 0) = m(i, 1) = 1.0;
    for (std::size_t i = 3; i < 6; ++i) m(i, 2) = m(i, 3) = 1.0;
    const BaselineResult res = column_sampling_l1(m, 2, 20, 7);
    CHECK(res.lp_error < 1e-6);
}

TEST_CASE("more trials never hurt") {
    Rng rng(403);
    const DenseMatrix m = random_matrix(10, 8, rng);
    const double e1 = column_sampling_l1(m, 2, 1, 31).lp_error;
    const double e50 = column_sampling_l1(m, 2, 50, 31).lp_error;
    CHECK(e50 <= e1 + 1e-12);
}

TEST_CASE("irls fit matches a grid-search l1 regression oracle") {
    Rng rng(404);
    const DenseMatrix m = random_matrix(10, 8, rng);
    const BaselineResult res = column_sampling_l1(m, 2, 1, 5);
    // Oracle: refit each column of M against the returned U over a fine
    // 2-parameter grid around the IRLS solution scale.
    const DenseMatrix& u = res.factors.u;
    double irls_total = 0.0, oracle_total = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double irls_err = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            double pred = 0.0;
            for (std::size_t p = 0; p < 2; ++p) pred += u(i, p) * res.factors.v(j, p);
            irls_err += std::abs(m(i, j) - pred);
        }
        irls_total += irls_err;

        double best = 1e300;
        for (int a = -60; a <= 60; ++a) {
            for (int b = -60; b <= 60; ++b) {
                const double va = a / 20.0, vb = b / 20.0;
                double err = 0.0;
                for (std::size_t i = 0; i < m.rows(); ++i)
                    err += std::abs(m(i, j) - u(i, 0) * va - u(i, 1) * vb);
                best = std::min(best, err);
            }
        }
        oracle_total += best;
    }
    // within 2% of the (coarser) grid oracle
    CHECK(irls_total <= oracle_total * 1.02);
}

TEST_CASE("lp_error is recomputed from the returned factors") {
    Rng rng(405);
    const DenseMatrix m = random_matrix(7, 5, rng);
    for (std::size_t r : {1, 2, 3}) {
        const BaselineResult res = column_sampling_l1(m, r, 4, 77);
        const double recomputed = entrywise_l1_norm(sub(m, res.factors.product()));
        CHECK(res.lp_error == doctest::Approx(recomputed).epsilon(1e-12));
    }
}

TEST_CASE("argument validation") {
    Rng rng(406);
    const DenseMatrix m = random_matrix(4, 4, rng);
    CHECK_THROWS_AS(svd_baseline(m, 0, NormP::L1), std::invalid_argument);
    CHECK_THROWS_AS(column_sampling_l1(m, 2, 0, 1), std::invalid_argument);
}
