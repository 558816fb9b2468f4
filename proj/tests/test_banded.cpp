#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ekcore/banded.hpp"

using namespace ek;

namespace {

// Dense Gaussian elimination reference.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) >
                std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(k)]))
                piv = i;
        std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(piv)]);
        std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(piv)]);
        for (int i = k + 1; i < n; ++i) {
            const double f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] /
                             a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
            for (int j = k; j < n; ++j)
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(k)];
        }
    }
    for (int k = n - 1; k >= 0; --k) {
        double s = b[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < n; ++j)
            s -= a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] *
                 b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(k)] = s / a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    return b;
}

}  // namespace

TEST_CASE("banded LU against dense elimination") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 20 + trial;
        const int kl = 1 + trial % 4, ku = 1 + (trial / 2) % 4;
        BandedLU lu(n, kl, ku);
        std::vector<std::vector<double>> dense(
            static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j) {
                double v = d(rng);
                if (i == j) v += 4.0;  // keep well conditioned
                lu.at(i, j) = v;
                dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            }
        std::vector<double> rhs(static_cast<std::size_t>(n));
        for (double& x : rhs) x = d(rng);
        const std::vector<double> expect = dense_solve(dense, rhs);
        lu.factor();
        std::vector<double> got = rhs;
        lu.solve(got);
        for (int i = 0; i < n; ++i)
            CHECK(got[static_cast<std::size_t>(i)] ==
                  doctest::Approx(expect[static_cast<std::size_t>(i)]).epsilon(1e-10));
    }
}

TEST_CASE("cyclic banded solve with periodic corners") {
    std::mt19937 rng(67);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 24 + trial;
        const int w = 2;  // cyclic half-bandwidth in scalars
        CyclicBanded mat(n, w, w);
        std::vector<std::vector<double>> dense(
            static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
        mat.zero();
        for (int i = 0; i < n; ++i)
            for (int dj = -w; dj <= w; ++dj) {
                const int j = ((i + dj) % n + n) % n;
                double v = d(rng);
                if (dj == 0) v += 5.0;
                mat.add(i, j, v);
                dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += v;
            }
        std::vector<double> rhs(static_cast<std::size_t>(n));
        for (double& x : rhs) x = d(rng);
        const std::vector<double> expect = dense_solve(dense, rhs);
        mat.factor();
        std::vector<double> got = rhs;
        mat.solve(got);
        for (int i = 0; i < n; ++i)
            CHECK(got[static_cast<std::size_t>(i)] ==
                  doctest::Approx(expect[static_cast<std::size_t>(i)]).epsilon(1e-9));
    }
}

TEST_CASE("stencil Newton solves a periodic nonlinear system") {
    // G_i(x) = 3 x_i + x_i^3 - 0.5 (x_{i+1} + x_{i-1}) - b_i, width-1 stencil.
    const int n = 40;
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> d(-0.5, 0.5);
    std::vector<double> b(static_cast<std::size_t>(n));
    for (double& v : b) v = d(rng);
    auto residual = [&](const std::vector<double>& x, std::vector<double>& g) {
        g.resize(x.size());
        for (int i = 0; i < n; ++i) {
            const double xp = x[static_cast<std::size_t>((i + 1) % n)];
            const double xm = x[static_cast<std::size_t>((i - 1 + n) % n)];
            const double xi = x[static_cast<std::size_t>(i)];
            g[static_cast<std::size_t>(i)] = 3.0 * xi + xi * xi * xi - 0.5 * (xp + xm) -
                                             b[static_cast<std::size_t>(i)];
        }
    };
    StencilNewton newton(n, 1, 1);
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    const auto res = newton.solve(residual, x, 1e-13, 50);
    CHECK(res.converged);
    std::vector<double> g;
    residual(x, g);
    double norm = 0.0;
    for (double v : g) norm = std::max(norm, std::abs(v));
    CHECK(norm <= 1e-13);

    // The cached Jacobian is reused on a nearby problem.
    for (double& v : b) v += 1e-3;
    std::vector<double> x2 = x;
    const auto res2 = newton.solve(residual, x2, 1e-13, 50);
    CHECK(res2.converged);
}

TEST_CASE("stencil Newton with multiple components and width 2") {
    // Two coupled fields with a width-2 stencil.
    const int n = 30;
    std::mt19937 rng(73);
    std::uniform_real_distribution<double> d(-0.3, 0.3);
    std::vector<double> b(static_cast<std::size_t>(2 * n));
    for (double& v : b) v = d(rng);
    auto wrap = [&](int i) { return ((i % n) + n) % n; };
    auto residual = [&](const std::vector<double>& x, std::vector<double>& g) {
        g.resize(x.size());
        for (int i = 0; i < n; ++i) {
            const double a0 = x[static_cast<std::size_t>(2 * i)];
            const double a1 = x[static_cast<std::size_t>(2 * i + 1)];
            const double ap = x[static_cast<std::size_t>(2 * wrap(i + 2))];
            const double am = x[static_cast<std::size_t>(2 * wrap(i - 2) + 1)];
            g[static_cast<std::size_t>(2 * i)] =
                4.0 * a0 + std::sin(a1) - 0.3 * ap - b[static_cast<std::size_t>(2 * i)];
            g[static_cast<std::size_t>(2 * i + 1)] =
                4.0 * a1 + a0 * a0 - 0.3 * am - b[static_cast<std::size_t>(2 * i + 1)];
        }
    };
    StencilNewton newton(n, 2, 2);
    std::vector<double> x(static_cast<std::size_t>(2 * n), 0.0);
    const auto res = newton.solve(residual, x, 1e-12, 50);
    CHECK(res.converged);
    CHECK(res.residual_norm <= 1e-12);
}
