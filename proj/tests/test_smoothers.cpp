#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "lram/smoothers.hpp"
#include "test_support.hpp"

using namespace lram;
using test::finite_diff_grad;
using test::max_rel_error;
using test::random_matrix;

TEST_CASE("charbonnier value") {
    CHECK(charbonnier_value(DenseMatrix::zeros(4, 4), 0.5) == 0.0);
    CHECK(charbonnier_value(DenseMatrix{{3.0}}, 1.0) ==
          doctest::Approx(std::sqrt(10.0) - 1.0).epsilon(1e-12));

    Rng rng(2);
    const DenseMatrix x = random_matrix(20, 30, rng);
    const double tau = 1e-3;
    const double v = charbonnier_value(x, tau);
    const double l1 = entrywise_l1_norm(x);
    CHECK(v <= l1);
    CHECK(v >= l1 - 600.0 * tau);
}

TEST_CASE("charbonnier gradient") {
    const double tau = 0.1;
    CHECK(entrywise_linf_norm(charbonnier_grad(DenseMatrix::zeros(2, 3), tau)) == 0.0);

    // saturates to +-1 far from the origin
    const DenseMatrix big{{1e6 * tau}};
    CHECK(charbonnier_grad(big, tau)(0, 0) == doctest::Approx(1.0).epsilon(1e-9));

    Rng rng(3);
    const DenseMatrix x = random_matrix(7, 5, rng);
    const DenseMatrix fd =
        finite_diff_grad([&](const DenseMatrix& z) { return charbonnier_value(z, tau); }, x);
    CHECK(max_rel_error(charbonnier_grad(x, tau), fd) < 1e-6);
}

TEST_CASE("charbonnier hessian diagonal") {
    const double tau = 0.25;
    const DenseMatrix at_zero = charbonnier_hessian_diag(DenseMatrix::zeros(3, 3), tau);
    for (double v : at_zero.data()) CHECK(v == doctest::Approx(1.0 / tau));

    Rng rng(4);
    const DenseMatrix x = random_matrix(4, 4, rng, -2.0, 2.0);
    const DenseMatrix d = charbonnier_hessian_diag(x, tau);
    for (double v : d.data()) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0 / tau);
    }

    // second derivative of the scalar loss by differencing the gradient
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x.data()[i];
        const double h = 1e-5 * std::max(1.0, std::abs(xi));
        auto g1 = [&](double z) {
            const double zz = z / tau;
            return zz / std::sqrt(zz * zz + 1.0);
        };
        const double fd = (g1(xi + h) - g1(xi - h)) / (2.0 * h);
        CHECK(d.data()[i] == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("huber value and gradient") {
    const double tau = 1.0;
    CHECK(huber_value(DenseMatrix::zeros(2, 2), tau) == 0.0);
    // continuity at |x| = tau: both branches give tau/2
    CHECK(huber_value(DenseMatrix{{tau}}, tau) == doctest::Approx(tau / 2.0));
    CHECK(huber_value(DenseMatrix{{2.0}}, 1.0) == doctest::Approx(1.5));

    Rng rng(5);
    const DenseMatrix x = random_matrix(6, 6, rng, -3.0, 3.0);
    const DenseMatrix fd =
        finite_diff_grad([&](const DenseMatrix& z) { return huber_value(z, tau); }, x);
    CHECK(max_rel_error(huber_grad(x, tau), fd) < 1e-5);
}

TEST_CASE("logsumexp value") {
    CHECK(logsumexp_value(DenseMatrix::zeros(5, 7), 0.3) == doctest::Approx(0.0));

    Rng rng(6);
    const DenseMatrix x = random_matrix(20, 30, rng);
    const double tau = 1e-3;
    const double v = logsumexp_value(x, tau);
    const double linf = entrywise_linf_norm(x);
    CHECK(v <= linf);
    CHECK(v >= linf - tau * std::log(2.0 * 600.0));

    DenseMatrix dom = DenseMatrix::zeros(4, 4);
    dom(1, 2) = 10.0;
    const double vd = logsumexp_value(dom, 0.01);
    CHECK(vd <= 10.0);
    CHECK(vd >= 10.0 - 0.01 * std::log(2.0 * 16.0));
}

TEST_CASE("logsumexp gradient") {
    const double tau = 0.5;
    CHECK(entrywise_linf_norm(logsumexp_grad(DenseMatrix::zeros(3, 3), tau)) == 0.0);

    Rng rng(7);
    const DenseMatrix x = random_matrix(6, 4, rng, -2.0, 2.0);
    const DenseMatrix g = logsumexp_grad(x, tau);
    const DenseMatrix gneg = logsumexp_grad(scale(x, -1.0), tau);
    CHECK(frobenius_norm(sub(g, scale(gneg, -1.0))) < 1e-14);

    CHECK(entrywise_linf_norm(g) < 1.0);
    CHECK(entrywise_l1_norm(g) <= 1.0 + 1e-12);

    const DenseMatrix fd =
        finite_diff_grad([&](const DenseMatrix& z) { return logsumexp_value(z, tau); }, x);
    CHECK(max_rel_error(g, fd) < 1e-6);
}

TEST_CASE("logsumexp grad is stable for tiny tau") {
    Rng rng(8);
    const DenseMatrix x = random_matrix(10, 10, rng, -5.0, 5.0);
    const DenseMatrix g = logsumexp_grad(x, 1e-3);
    CHECK(g.all_finite());
    CHECK(std::isfinite(logsumexp_value(x, 1e-3)));
}

TEST_CASE("logsumexp hessian quadform") {
    const double tau = 0.5;
    Rng rng(9);
    const DenseMatrix x = random_matrix(5, 5, rng);
    CHECK(logsumexp_hessian_quadform(x, tau, DenseMatrix::zeros(5, 5)) == 0.0);

    for (int trial = 0; trial < 10; ++trial) {
        const DenseMatrix xx = random_matrix(5, 5, rng, -2.0, 2.0);
        const DenseMatrix y = random_matrix(5, 5, rng, -2.0, 2.0);
        const double q = logsumexp_hessian_quadform(xx, tau, y);
        const double fro = frobenius_norm(y);
        CHECK(q >= 0.0);
        CHECK(q <= fro * fro / tau + 1e-12);
    }

    CHECK_THROWS_AS(logsumexp_hessian_quadform(x, tau, DenseMatrix::zeros(3, 3)),
                    std::invalid_argument);
}

TEST_CASE("logsumexp quadform matches explicit dense hessian at 3x3") {
    const double tau = 0.7;
    Rng rng(10);
    const DenseMatrix x = random_matrix(3, 3, rng);
    const DenseMatrix y = random_matrix(3, 3, rng);

    // Build the 9x9 Hessian from P and N directly.
    const std::size_t mn = 9;
    std::vector<double> p(mn), nvec(mn);
    double sum_p = 0.0;
    for (std::size_t i = 0; i < mn; ++i) {
        const double z = x.data()[i] / tau;
        p[i] = std::exp(z) + std::exp(-z);
        nvec[i] = std::exp(z) - std::exp(-z);
        sum_p += p[i];
    }
    double quad = 0.0;
    for (std::size_t a = 0; a < mn; ++a)
        for (std::size_t b = 0; b < mn; ++b) {
            double h = (a == b ? p[a] : 0.0) - nvec[a] * nvec[b] / sum_p;
            h /= tau * sum_p;
            quad += y.data()[a] * h * y.data()[b];
        }
    CHECK(logsumexp_hessian_quadform(x, tau, y) == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("lipschitz constants") {
    CHECK(lipschitz_constant(SmootherKind::Charbonnier, 0.001) == doctest::Approx(1000.0));
    CHECK(lipschitz_constant(SmootherKind::LogSumExp, 0.5) == doctest::Approx(2.0));
    CHECK(lipschitz_constant(SmootherKind::Huber, 0.1) == doctest::Approx(10.0));

    // empirical supremum of the Charbonnier curvature never exceeds 1/tau
    Rng rng(11);
    const double tau = 0.05;
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const DenseMatrix x = random_matrix(32, 32, rng, -4.0, 4.0);
        worst = std::max(worst, entrywise_linf_norm(charbonnier_hessian_diag(x, tau)));
    }
    CHECK(worst <= lipschitz_constant(SmootherKind::Charbonnier, tau));
}

TEST_CASE("sandwich property across tau values") {
    Rng rng(12);
    for (double tau : {1.0, 0.1, 0.001}) {
        for (int t = 0; t < 25; ++t) {
            const DenseMatrix x = random_matrix(2 + t % 9, 2 + (t * 3) % 9, rng, -2.0, 2.0);
            const double mn = static_cast<double>(x.rows() * x.cols());
            const double l1 = entrywise_l1_norm(x);
            const double h = charbonnier_value(x, tau);
            CHECK(h <= l1);
            CHECK(h >= l1 - mn * tau);

            const double linf = entrywise_linf_norm(x);
            const double s = logsumexp_value(x, tau);
            // 1e-12 relative slack absorbs rounding when the bound is tight
            const double ulp = 1e-12 * std::max(1.0, linf);
            CHECK(s <= linf + ulp);
            CHECK(s >= linf - tau * std::log(2.0 * mn) - ulp);
        }
    }
}

TEST_CASE("monotone tightening in tau") {
    Rng rng(13);
    const DenseMatrix x = random_matrix(8, 8, rng, -2.0, 2.0);
    const double l1 = entrywise_l1_norm(x);
    const double linf = entrywise_linf_norm(x);
    double prev_gap_l1 = l1 - charbonnier_value(x, 1.0);
    double prev_gap_linf = linf - logsumexp_value(x, 1.0);
    for (double tau : {0.5, 0.1, 0.01}) {
        const double gap_l1 = l1 - charbonnier_value(x, tau);
        CHECK(gap_l1 <= prev_gap_l1 + 1e-12);
        prev_gap_l1 = gap_l1;
        const double gap_linf = linf - logsumexp_value(x, tau);
        CHECK(gap_linf <= prev_gap_linf + 1e-12);
        prev_gap_linf = gap_linf;
    }
}

TEST_CASE("descent lemma for both smoothers") {
    Rng rng(14);
    for (int t = 0; t < 100; ++t) {
        const double tau = 0.2;
        const DenseMatrix x = random_matrix(5, 4, rng, -2.0, 2.0);
        const DenseMatrix d = random_matrix(5, 4, rng, -0.5, 0.5);
        const double lcap = 1.0 / tau;
        const double dfro = frobenius_norm(d);

        {
            const double lhs = charbonnier_value(add(x, d), tau);
            const double rhs = charbonnier_value(x, tau) + dot(charbonnier_grad(x, tau), d) +
                               0.5 * lcap * dfro * dfro;
            CHECK(lhs <= rhs + 1e-10);
        }
        {
            const double lhs = logsumexp_value(add(x, d), tau);
            const double rhs = logsumexp_value(x, tau) + dot(logsumexp_grad(x, tau), d) +
                               0.5 * lcap * dfro * dfro;
            CHECK(lhs <= rhs + 1e-10);
        }
    }
}

TEST_CASE("invalid tau rejected") {
    CHECK_THROWS_AS(charbonnier_value(DenseMatrix::zeros(2, 2), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(logsumexp_value(DenseMatrix::zeros(2, 2), -1.0), std::invalid_argument);
}
