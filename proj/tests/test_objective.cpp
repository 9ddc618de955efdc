#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "lram/objective.hpp"
#include "test_support.hpp"

using namespace lram;
using test::finite_diff_grad;
using test::max_rel_error;
using test::random_matrix;
using test::random_rank_r;

TEST_CASE("objective value composition") {
    Rng rng(101);
    const DenseMatrix m = random_matrix(6, 5, rng);

    for (ObjectiveKind kind : {ObjectiveKind::Charbonnier, ObjectiveKind::LogSumExp}) {
        SmoothedObjective obj{m, kind, 0.1, 0.0};
        CHECK(objective_value(obj, m) == doctest::Approx(0.0));
    }

    SmoothedObjective charb{m, ObjectiveKind::Charbonnier, 0.1, 0.0};
    CHECK(objective_value(charb, DenseMatrix::zeros(6, 5)) ==
          doctest::Approx(charbonnier_value(m, 0.1)));

    // two-term recomposition with a ridge
    const DenseMatrix x = random_matrix(6, 5, rng);
    SmoothedObjective ridged{m, ObjectiveKind::Charbonnier, 0.1, 0.01};
    const double fro = frobenius_norm(x);
    CHECK(objective_value(ridged, x) ==
          doctest::Approx(charbonnier_value(sub(m, x), 0.1) + 0.005 * fro * fro));

    CHECK_THROWS_AS(objective_value(charb, DenseMatrix::zeros(5, 6)), std::invalid_argument);
}

TEST_CASE("grad_x matches finite differences") {
    Rng rng(103);
    const DenseMatrix m = random_matrix(5, 4, rng);
    const DenseMatrix x = random_matrix(5, 4, rng);

    for (ObjectiveKind kind :
         {ObjectiveKind::Charbonnier, ObjectiveKind::LogSumExp, ObjectiveKind::Quadratic}) {
        SmoothedObjective obj{m, kind, 0.2, 0.01};
        const DenseMatrix fd = finite_diff_grad(
            [&](const DenseMatrix& z) { return objective_value(obj, z); }, x);
        CHECK(max_rel_error(objective_grad_x(obj, x), fd) < 1e-6);
    }
}

TEST_CASE("grad_x is zero at the data with no ridge") {
    Rng rng(104);
    const DenseMatrix m = random_matrix(4, 7, rng);
    SmoothedObjective obj{m, ObjectiveKind::Charbonnier, 0.5, 0.0};
    CHECK(entrywise_linf_norm(objective_grad_x(obj, m)) < 1e-14);
}

TEST_CASE("large lambda: ridge dominates the gradient") {
    Rng rng(105);
    const DenseMatrix m = random_matrix(5, 5, rng);
    const DenseMatrix x = random_matrix(5, 5, rng, 0.5, 1.5);
    const double lambda = 1e3;
    SmoothedObjective obj{m, ObjectiveKind::Charbonnier, 0.1, lambda};
    const DenseMatrix g = objective_grad_x(obj, x);
    const DenseMatrix ridge_part = scale(x, lambda);
    // deviation from lambda*X is bounded by the smoother gradient (<= 1 per entry)
    const double dev = frobenius_norm(sub(g, ridge_part));
    CHECK(dev <= frobenius_norm(x) * 0.01 * lambda);
    CHECK(dev <= 5.0);  // |smoother grad| <= 1 entrywise, 25 entries
}

TEST_CASE("grad_factors matches finite differences over U and V") {
    Rng rng(106);
    const DenseMatrix m = random_matrix(6, 4, rng);
    SmoothedObjective obj{m, ObjectiveKind::Charbonnier, 0.2, 0.01};
    FactorPair f{random_matrix(6, 2, rng), random_matrix(4, 2, rng)};

    const auto [gu, gv] = objective_grad_factors(obj, f);

    auto value_of = [&](const FactorPair& fp) { return objective_value(obj, fp.product()); };
    const DenseMatrix fd_u = finite_diff_grad(
        [&](const DenseMatrix& u) { return value_of({u, f.v}); }, f.u);
    const DenseMatrix fd_v = finite_diff_grad(
        [&](const DenseMatrix& v) { return value_of({f.u, v}); }, f.v);
    CHECK(max_rel_error(gu, fd_u) < 1e-5);
    CHECK(max_rel_error(gv, fd_v) < 1e-5);
}

TEST_CASE("factor gradients vanish at an exact factorization") {
    Rng rng(107);
    FactorPair f{random_matrix(6, 2, rng), random_matrix(4, 2, rng)};
    SmoothedObjective obj{f.product(), ObjectiveKind::Charbonnier, 0.3, 0.0};
    const auto [gu, gv] = objective_grad_factors(obj, f);
    CHECK(entrywise_linf_norm(gu) < 1e-12);
    CHECK(entrywise_linf_norm(gv) < 1e-12);
}

TEST_CASE("scaling ambiguity leaves grad_x unchanged") {
    Rng rng(108);
    const DenseMatrix m = random_matrix(5, 3, rng);
    SmoothedObjective obj{m, ObjectiveKind::LogSumExp, 0.4, 0.0};
    FactorPair f{random_matrix(5, 2, rng), random_matrix(3, 2, rng)};
    FactorPair g{scale(f.u, 2.0), scale(f.v, 0.5)};
    CHECK(frobenius_norm(sub(f.product(), g.product())) < 1e-12);
    const DenseMatrix gx_f = objective_grad_x(obj, f.product());
    const DenseMatrix gx_g = objective_grad_x(obj, g.product());
    CHECK(frobenius_norm(sub(gx_f, gx_g)) < 1e-12);
}

TEST_CASE("strong convexity and smoothness certificates") {
    Rng rng(109);
    const DenseMatrix m = random_matrix(5, 5, rng);
    const double tau = 0.3, lambda = 0.05;
    for (ObjectiveKind kind : {ObjectiveKind::Charbonnier, ObjectiveKind::LogSumExp}) {
        SmoothedObjective obj{m, kind, tau, lambda};
        const double lcap = obj.lipschitz_estimate();
        for (int t = 0; t < 30; ++t) {
            const DenseMatrix x = random_matrix(5, 5, rng, -1.5, 1.5);
            const DenseMatrix y = random_matrix(5, 5, rng, -1.5, 1.5);
            const DenseMatrix diff = sub(y, x);
            const double base =
                objective_value(obj, x) + dot(objective_grad_x(obj, x), diff);
            const double fro = frobenius_norm(diff);
            CHECK(objective_value(obj, y) >= base + 0.5 * lambda * fro * fro - 1e-10);
            CHECK(objective_value(obj, y) <= base + 0.5 * lcap * fro * fro + 1e-10);
        }
    }
}

TEST_CASE("objective sandwiches the true error") {
    Rng rng(110);
    const DenseMatrix m = random_matrix(10, 8, rng);
    const double tau = 0.01, lambda = 0.02;
    const double mn = 80.0;
    for (int t = 0; t < 20; ++t) {
        const DenseMatrix x = random_matrix(10, 8, rng);
        const double fro = frobenius_norm(x);
        const double ridge = 0.5 * lambda * fro * fro;

        SmoothedObjective l1obj{m, ObjectiveKind::Charbonnier, tau, lambda};
        const double v1 = objective_value(l1obj, x) - ridge;
        const double l1 = entrywise_l1_norm(sub(m, x));
        CHECK(v1 <= l1 + 1e-10);
        CHECK(v1 >= l1 - mn * tau - 1e-10);

        SmoothedObjective liobj{m, ObjectiveKind::LogSumExp, tau, lambda};
        const double vi = objective_value(liobj, x) - ridge;
        const double linf = entrywise_linf_norm(sub(m, x));
        CHECK(vi <= linf + 1e-10);
        CHECK(vi >= linf - tau * std::log(2.0 * mn) - 1e-10);
    }
}
