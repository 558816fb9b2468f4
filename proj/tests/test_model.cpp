#include <doctest.h>

#include <cmath>
#include <random>

#include "ekcore/model.hpp"

using namespace ek;

namespace {

FluidModel kinetic_only_model() {
    // F = 0 test closure (the convective part is degenerate; entropy only).
    FluidModel m;
    m.kappa = [](double) { return 1.0; };
    m.kappa_prime = [](double) { return 0.0; };
    m.pressure = [](double) { return 0.0; };
    m.pressure_prime = [](double) { return 0.0; };
    m.energy_density = [](double) { return 0.0; };
    m.energy_density_prime = [](double) { return 0.0; };
    m.energy_slope_inverse = [](double) { return 1.0; };
    m.kappa_is_constant = true;
    return m;
}

double fd_gradient_error(const FluidModel& m, const Vec3& v, double h) {
    const Vec3 z = entropy_variables_point(m, v);
    double err = 0.0;
    for (int c = 0; c < 3; ++c) {
        Vec3 vp = v, vm = v;
        vp[c] += h;
        vm[c] -= h;
        const double fd = (entropy(m, vp) - entropy(m, vm)) / (2.0 * h);
        err = std::max(err, std::abs(fd - z[c]));
    }
    return err;
}

}  // namespace

TEST_CASE("shallow water closure") {
    const FluidModel m = shallow_water_model(9.8, 4.0);
    CHECK(m.pressure(1.0) == doctest::Approx(4.9));
    CHECK(m.pressure(1e-9) == doctest::Approx(0.0));
    CHECK(m.energy_density(1e-9) == doctest::Approx(0.0));
    for (double h : {0.3, 1.0, 2.5}) {
        CHECK(h * m.energy_density_prime(h) - m.energy_density(h) ==
              doctest::Approx(m.pressure(h)).epsilon(1e-13));
    }
}

TEST_CASE("falling-film closure and its energy density") {
    const FluidModel m = liu_gollub_model(0.723, 0.05);
    CHECK(m.pressure(1.0) == doctest::Approx(0.5 / 0.723 + 0.08).epsilon(1e-12));
    CHECK(m.pressure(1.0) == doctest::Approx(0.7716).epsilon(1e-3));
    CHECK(m.pressure(0.0) == doctest::Approx(0.0));
    for (double h : {0.5, 1.0, 2.0}) {
        CHECK(h * m.energy_density_prime(h) - m.energy_density(h) ==
              doctest::Approx(m.pressure(h)).epsilon(1e-12));
    }
    // F' inverse round trip.
    for (double h : {0.2, 0.8, 1.7, 3.0}) {
        CHECK(m.energy_slope_inverse(m.energy_density_prime(h)) ==
              doctest::Approx(h).epsilon(1e-12));
    }
}

TEST_CASE("closure consistency rho F' - F = P on sampled densities") {
    const FluidModel sw = shallow_water_model(9.8, 1e-4);
    const FluidModel lg = liu_gollub_model(0.723, 0.05);
    for (int k = 1; k <= 100; ++k) {
        const double rho = 0.1 * k;
        for (const FluidModel* m : {&sw, &lg}) {
            const double lhs = rho * m->energy_density_prime(rho) - m->energy_density(rho);
            CHECK(lhs == doctest::Approx(m->pressure(rho)).epsilon(1e-10));
        }
    }
}

TEST_CASE("entropy values") {
    const FluidModel sw = shallow_water_model(9.8, 1.0);
    CHECK(entropy(sw, Vec3{{1.0, 0.0, 0.0}}) == doctest::Approx(4.9));
    const FluidModel kin = kinetic_only_model();
    CHECK(entropy(kin, Vec3{{1.0, 2.0, 0.0}}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(entropy(sw, Vec3{{-1.0, 0.0, 0.0}}), std::domain_error);
}

TEST_CASE("entropy is convex: analytic Hessian is PSD and matches differences") {
    const FluidModel sw = shallow_water_model(9.8, 1.0);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dr(0.2, 3.0), du(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double rho = dr(rng);
        const Vec3 v{{rho, rho * du(rng), rho * du(rng)}};
        const Mat3 hess = entropy_hessian(sw, v);
        CHECK(min_eigenvalue_sym(hess) >= -1e-12);
        // Second differences of U reproduce the analytic Hessian.
        const double h = 1e-5;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                Vec3 vpp = v, vpm = v, vmp = v, vmm = v;
                vpp[a] += h; vpp[b] += h;
                vpm[a] += h; vpm[b] -= h;
                vmp[a] -= h; vmp[b] += h;
                vmm[a] -= h; vmm[b] -= h;
                const double fd = (entropy(sw, vpp) - entropy(sw, vpm) -
                                   entropy(sw, vmp) + entropy(sw, vmm)) /
                                  (4.0 * h * h);
                CHECK(fd == doctest::Approx(hess(a, b)).epsilon(5e-4).scale(1.0 + std::abs(hess(a,b))));
            }
    }
}

TEST_CASE("entropy variables: values, gradient property, round trip") {
    const FluidModel sw = shallow_water_model(9.8, 1.0);
    {
        const Vec3 z = entropy_variables_point(sw, Vec3{{1.0, 0.0, 0.0}});
        CHECK(z[0] == doctest::Approx(9.8));
        CHECK(z[1] == doctest::Approx(0.0));
        CHECK(z[2] == doctest::Approx(0.0));
    }
    {
        // h = 2, u = 1, w = 0: z1 = F'(2) - 1/2 = 19.6 - 0.5.
        const Vec3 z = entropy_variables_point(sw, Vec3{{2.0, 2.0, 0.0}});
        CHECK(z[0] == doctest::Approx(19.1));
        CHECK(z[1] == doctest::Approx(1.0));
        CHECK(z[2] == doctest::Approx(0.0));
    }
    // Centered differences of U converge to z at second order (ratio ~4).
    const Vec3 v{{1.3, 0.9, -0.4}};
    const double e1 = fd_gradient_error(sw, v, 1e-3);
    const double e2 = fd_gradient_error(sw, v, 5e-4);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));

    // Round trip v -> z -> v.
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dr(0.2, 3.0), du(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double rho = dr(rng);
        const Vec3 vv{{rho, rho * du(rng), rho * du(rng)}};
        const Vec3 back = conserved_from_entropy(sw, entropy_variables_point(sw, vv));
        for (int c = 0; c < 3; ++c)
            CHECK(back[c] == doctest::Approx(vv[c]).epsilon(1e-12));
    }
}

TEST_CASE("convective flux and its Jacobian") {
    const FluidModel sw = shallow_water_model(9.8, 1.0);
    {
        const Vec3 f = convective_flux(sw, Vec3{{1.0, 0.0, 0.0}});
        CHECK(f[0] == doctest::Approx(0.0));
        CHECK(f[1] == doctest::Approx(sw.pressure(1.0)));
        CHECK(f[2] == doctest::Approx(0.0));
    }
    {
        // rho=2, u=3, w=1.
        const Vec3 f = convective_flux(sw, Vec3{{2.0, 6.0, 2.0}});
        CHECK(f[0] == doctest::Approx(6.0));
        CHECK(f[1] == doctest::Approx(37.6));
        CHECK(f[2] == doctest::Approx(6.0));
    }
    // At u = 0 the first and third components vanish for any rho, w.
    for (double rho : {0.5, 1.0, 2.0})
        for (double w : {-1.0, 0.0, 2.0}) {
            const Vec3 f = convective_flux(sw, Vec3{{rho, 0.0, rho * w}});
            CHECK(f[0] == 0.0);
            CHECK(f[2] == 0.0);
        }
    // Jacobian against finite differences.
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> dr(0.3, 2.5), du(-1.5, 1.5);
    for (int trial = 0; trial < 30; ++trial) {
        const double rho = dr(rng);
        const Vec3 v{{rho, rho * du(rng), rho * du(rng)}};
        const Mat3 jac = convective_flux_jacobian(sw, v);
        const double h = 1e-6;
        for (int c = 0; c < 3; ++c) {
            Vec3 vp = v, vm = v;
            vp[c] += h;
            vm[c] -= h;
            const Vec3 fp = convective_flux(sw, vp);
            const Vec3 fm = convective_flux(sw, vm);
            for (int r = 0; r < 3; ++r)
                CHECK((fp[r] - fm[r]) / (2.0 * h) ==
                      doctest::Approx(jac(r, c)).epsilon(1e-5).scale(1.0 + std::abs(jac(r, c))));
        }
    }
}

TEST_CASE("mu closure") {
    const FluidModel m4 = shallow_water_model(9.8, 4.0);
    CHECK(mu(m4, 1.0) == doctest::Approx(2.0));
    CHECK(mu(m4, 1e-12) == doctest::Approx(0.0).epsilon(1e-6));
    // Quantum-style closure kappa = c/rho gives mu = rho sqrt(c).
    FluidModel q = shallow_water_model(9.8, 1.0);
    const double c = 2.5;
    q.kappa = [c](double rho) { return c / rho; };
    q.kappa_prime = [c](double rho) { return -c / (rho * rho); };
    q.kappa_is_constant = false;
    q.form = ModelForm::generic;
    for (double rho : {0.3, 1.0, 2.0})
        CHECK(mu(q, rho) == doctest::Approx(rho * std::sqrt(c)).epsilon(1e-13));
}

TEST_CASE("w initialization from the density field") {
    const double kappa = 0.04;
    const FluidModel m = shallow_water_model(9.8, kappa);

    // Constant field: w = 0.
    const std::vector<double> flat(32, 1.2);
    for (double w : w_from_density(m, flat, 0.1)) CHECK(w == 0.0);

    // Smooth profile: (h w) approaches (2/3) sqrt(kappa) d_x h^{3/2} at
    // second order; check the discrete forms agree under refinement.
    auto run = [&](int n) {
        const double length = 1.0;
        const double dx = length / n;
        std::vector<double> h(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double x = (j + 0.5) * dx;
            h[static_cast<std::size_t>(j)] = 1.0 + 0.3 * std::sin(2.0 * M_PI * x);
        }
        const std::vector<double> w = w_from_density(m, h, dx);
        double err = 0.0;
        for (int j = 0; j < n; ++j) {
            const double x = (j + 0.5) * dx;
            const double dhdx = 0.3 * 2.0 * M_PI * std::cos(2.0 * M_PI * x);
            const double exact = std::sqrt(kappa / h[static_cast<std::size_t>(j)]) * dhdx;
            err = std::max(err, std::abs(w[static_cast<std::size_t>(j)] - exact));
        }
        return err;
    };
    const double e1 = run(100);
    const double e2 = run(200);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);

    // (h w) versus the h^{3/2} difference form, second-order agreement.
    auto run_hw = [&](int n) {
        const double dx = 1.0 / n;
        std::vector<double> h(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double x = (j + 0.5) * dx;
            h[static_cast<std::size_t>(j)] = 1.0 + 0.3 * std::sin(2.0 * M_PI * x);
        }
        const std::vector<double> w = w_from_density(m, h, dx);
        double err = 0.0;
        for (int j = 0; j < n; ++j) {
            const int jp = (j + 1) % n, jm = (j - 1 + n) % n;
            const double target =
                std::sqrt(kappa) *
                (std::pow(h[static_cast<std::size_t>(jp)], 1.5) -
                 std::pow(h[static_cast<std::size_t>(jm)], 1.5)) /
                (3.0 * dx);
            err = std::max(err,
                           std::abs(h[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)] -
                                    target));
        }
        return err;
    };
    const double h1 = run_hw(100);
    const double h2 = run_hw(200);
    CHECK(h1 / h2 > 3.5);
    CHECK(h1 / h2 < 4.5);
}
