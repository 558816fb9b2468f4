#include <doctest.h>

#include <cmath>
#include <random>

#include "ekcore/flux.hpp"
#include "ekcore/solver.hpp"
#include "ekcore/vn_stability.hpp"

using namespace ek;

namespace {

Vec3 random_state(std::mt19937& rng, double rho_lo = 0.4, double rho_hi = 2.5) {
    std::uniform_real_distribution<double> dr(rho_lo, rho_hi), du(-1.0, 1.0);
    const double rho = dr(rng);
    return Vec3{{rho, rho * du(rng), rho * du(rng)}};
}

}  // namespace

TEST_CASE("scalar viscosity flux: consistency and the centered limit") {
    const FluidModel m = shallow_water_model(9.8, 0.03);
    std::mt19937 rng(17);
    for (int t = 0; t < 50; ++t) {
        const Vec3 v = random_state(rng);
        const InterfaceFlux f = scalar_viscosity_flux(m, v, v, 1.7);
        const Vec3 exact = convective_flux(m, v);
        for (int c = 0; c < 3; ++c)
            CHECK(f.value[c] == doctest::Approx(exact[c]).epsilon(1e-13));
    }
    // p = 0: centered average.
    const Vec3 a{{1.0, 0.3, 0.1}}, b{{2.0, -0.4, 0.2}};
    const InterfaceFlux f0 = scalar_viscosity_flux(m, a, b, 0.0);
    const Vec3 avg = 0.5 * (convective_flux(m, a) + convective_flux(m, b));
    for (int c = 0; c < 3; ++c) CHECK(f0.value[c] == doctest::Approx(avg[c]));
}

TEST_CASE("scalar viscosity flux: frozen dam-break value") {
    // (h, u, w) = (2,0,0) | (1,0,0), g = 9.8, p = sqrt(2 g).
    const FluidModel m = shallow_water_model(9.8, 0.03);
    const double p = std::sqrt(2.0 * 9.8);
    const InterfaceFlux f =
        scalar_viscosity_flux(m, Vec3{{2.0, 0.0, 0.0}}, Vec3{{1.0, 0.0, 0.0}}, p);
    CHECK(f.value[0] == doctest::Approx(2.2135943621178655).epsilon(1e-15));
    CHECK(f.value[1] == doctest::Approx(12.25).epsilon(1e-15));
    CHECK(f.value[2] == doctest::Approx(0.0));
}

TEST_CASE("Rusanov viscosity coefficient") {
    const FluidModel m = shallow_water_model(9.8, 0.03);
    // u = 0 on both sides: p = sqrt(g h_max) + p_tilde.
    const double pt = 0.7;
    CHECK(rusanov_p(m, Vec3{{2.0, 0.0, 0.0}}, Vec3{{1.0, 0.0, 0.0}}, pt) ==
          doctest::Approx(std::sqrt(9.8 * 2.0) + pt));
    // Equal states, p_tilde = 0: |u| + c.
    const Vec3 v{{1.5, 1.5 * 0.8, 0.0}};
    CHECK(rusanov_p(m, v, v, 0.0) ==
          doctest::Approx(0.8 + std::sqrt(9.8 * 1.5)));
    // LF-mode viscosity reproduces p_tilde = 1/(2 lambda1).
    FluxSpec lf;
    lf.kind = FluxKind::lax_friedrichs;
    const double dx = 0.01, dt = 0.002;
    CHECK(resolve_p_tilde(lf, dx, dt) == doctest::Approx(dx / (2.0 * dt)));
}

TEST_CASE("entropy-conservative flux: consistency, symmetry, quadrature") {
    const FluidModel m = shallow_water_model(9.8, 0.03);
    std::mt19937 rng(23);
    // Equal states: f(v) and Q* = 0.
    for (int t = 0; t < 20; ++t) {
        const Vec3 v = random_state(rng);
        const Vec3 z = entropy_variables_point(m, v);
        const InterfaceFlux f = entropy_conservative_flux(m, z, z, 8);
        const Vec3 exact = convective_flux(m, v);
        for (int c = 0; c < 3; ++c)
            CHECK(f.value[c] == doctest::Approx(exact[c]).epsilon(1e-13));
        CHECK(f.viscosity_matrix_Q->max_abs() < 1e-13);
    }
    // Q* is symmetric to quadrature accuracy and stable in the order.
    for (int t = 0; t < 30; ++t) {
        const Vec3 vl = random_state(rng);
        Vec3 vr = vl;
        std::uniform_real_distribution<double> dj(-0.08, 0.08);
        for (int c = 0; c < 3; ++c) vr[c] *= 1.0 + dj(rng);
        const Vec3 zl = entropy_variables_point(m, vl);
        const Vec3 zr = entropy_variables_point(m, vr);
        const Mat3 q8 = entropy_conservative_Q(m, zl, zr, 8);
        const Mat3 q16 = entropy_conservative_Q(m, zl, zr, 16);
        const Mat3 skew = q8 - q8.transposed();
        CHECK(skew.max_abs() < 1e-11 * (1.0 + q8.max_abs()));
        const Mat3 diff = q8 - q16;
        CHECK(diff.max_abs() < 1e-11 * (1.0 + q16.max_abs()));
    }
}

TEST_CASE("entropy-conservative flux telescopes the entropy on periodic fields") {
    const FluidModel m = shallow_water_model(9.8, 0.03);
    const int n = 24;
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dr(-0.1, 0.1);
    std::vector<Vec3> v(n), z(n);
    for (int j = 0; j < n; ++j) {
        const double x = (j + 0.5) / n;
        const double h = 1.0 + 0.2 * std::sin(2.0 * M_PI * x) + dr(rng) * 0.1;
        v[static_cast<std::size_t>(j)] = Vec3{{h, h * 0.3 * std::cos(2.0 * M_PI * x), h * dr(rng)}};
        z[static_cast<std::size_t>(j)] =
            entropy_variables_point(m, v[static_cast<std::size_t>(j)]);
    }
    double production = 0.0;
    double scale = 0.0;
    for (int j = 0; j < n; ++j) {
        const int jp = (j + 1) % n;
        const Vec3 f =
            entropy_conservative_flux(m, z[static_cast<std::size_t>(j)],
                                      z[static_cast<std::size_t>(jp)], 12)
                .value;
        // sum_j <z_j, f_{j+1/2} - f_{j-1/2}> telescopes via psi.
        production += (z[static_cast<std::size_t>(j)] - z[static_cast<std::size_t>(jp)]).dot(f);
        production += flux_potential(m, z[static_cast<std::size_t>(jp)]) -
                      flux_potential(m, z[static_cast<std::size_t>(j)]);
        scale += std::abs(z[static_cast<std::size_t>(j)].dot(f));
    }
    CHECK(std::abs(production) <= 1e-9 * (1.0 + scale));
}

TEST_CASE("numerical entropy flux: consistency and the u = 0 reduction") {
    const FluidModel m = shallow_water_model(9.8, 0.03);
    std::mt19937 rng(37);
    for (int t = 0; t < 30; ++t) {
        const Vec3 v = random_state(rng);
        const Vec3 z = entropy_variables_point(m, v);
        const double g0 = numerical_entropy_flux_g0(m, z, z, convective_flux(m, v));
        CHECK(g0 == doctest::Approx(entropy_flux_g0(m, v)).epsilon(1e-12));
    }
    // u = 0 on both sides: G0 vanishes and the numerical flux reduces to the
    // viscosity contraction -(p/2) <z_bar, (dv)> restricted to (rho, rho w).
    for (int t = 0; t < 20; ++t) {
        std::uniform_real_distribution<double> dr(0.5, 2.0), dw(-0.5, 0.5);
        const double p = 1.3;
        Vec3 vl{{dr(rng), 0.0, 0.0}};
        Vec3 vr{{dr(rng), 0.0, 0.0}};
        vl[2] = vl[0] * dw(rng);
        vr[2] = vr[0] * dw(rng);
        const Vec3 zl = entropy_variables_point(m, vl);
        const Vec3 zr = entropy_variables_point(m, vr);
        const InterfaceFlux f = scalar_viscosity_flux(m, vl, vr, p);
        CHECK(entropy_flux_g0(m, vl) == doctest::Approx(0.0));
        const Vec3 zbar = 0.5 * (zl + zr);
        const double expected = -0.5 * p *
            (zbar[0] * (vr[0] - vl[0]) + zbar[2] * (vr[2] - vl[2]));
        CHECK(f.entropy_flux_G0 == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("Tadmor production identity on random triples") {
    const FluidModel m = shallow_water_model(9.8, 0.03);
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> dj(-0.05, 0.05);
    for (int t = 0; t < 40; ++t) {
        const Vec3 v0 = random_state(rng, 0.6, 2.0);
        Vec3 vm = v0, vp = v0;
        for (int c = 0; c < 3; ++c) {
            vm[c] *= 1.0 + dj(rng);
            vp[c] *= 1.0 + dj(rng);
        }
        const double p = rusanov_p(m, vm, vp, 0.4);
        const Vec3 zm = entropy_variables_point(m, vm);
        const Vec3 z0 = entropy_variables_point(m, v0);
        const Vec3 zp = entropy_variables_point(m, vp);

        const InterfaceFlux fp = scalar_viscosity_flux(m, v0, vp, p, true, 16);
        const InterfaceFlux fm = scalar_viscosity_flux(m, vm, v0, p, true, 16);

        const double lhs = z0.dot(fp.value - fm.value) -
                           (fp.entropy_flux_G0 - fm.entropy_flux_G0);

        const Mat3 dp = *fp.viscosity_matrix_Q - entropy_conservative_Q(m, z0, zp, 16);
        const Mat3 dm = *fm.viscosity_matrix_Q - entropy_conservative_Q(m, zm, z0, 16);
        const Vec3 dzp = zp - z0;
        const Vec3 dzm = z0 - zm;
        const double rhs = 0.25 * (dzp.dot(dp * dzp) + dzm.dot(dm * dzm));
        CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("viscosity difference D = Q - Q* is positive semidefinite for moderate jumps") {
    const FluidModel m = shallow_water_model(9.8, 0.03);
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> dj(-1.0, 1.0);
    for (int t = 0; t < 40; ++t) {
        const Vec3 vl = random_state(rng, 0.6, 2.0);
        const Vec3 zl = entropy_variables_point(m, vl);
        Vec3 zr = zl;
        for (int c = 0; c < 3; ++c) zr[c] += 0.1 * dj(rng) * std::abs(zl.norm()) / 3.0;
        const Vec3 vr = conserved_from_entropy(m, zr);
        const double p = rusanov_p(m, vl, vr, 0.0);
        const InterfaceFlux f = scalar_viscosity_flux(m, vl, vr, p, true, 12);
        const Mat3 d = *f.viscosity_matrix_Q - entropy_conservative_Q(m, zl, zr, 12);
        CHECK(min_eigenvalue_sym(d) >= -1e-10);
    }
}

TEST_CASE("HLL flux: consistency and the symmetric-speed reduction") {
    const FluidModel m = shallow_water_model(9.8, 0.03);
    std::mt19937 rng(47);
    for (int t = 0; t < 30; ++t) {
        const Vec3 v = random_state(rng);
        const Vec3 f = hll_flux(m, v, v).value;
        const Vec3 exact = convective_flux(m, v);
        for (int c = 0; c < 3; ++c)
            CHECK(f[c] == doctest::Approx(exact[c]).epsilon(1e-13));
    }
    // Mirror states with u = 0: Davis speeds are -c, +c and HLL equals the
    // Rusanov flux with p = c.
    const Vec3 a{{1.0, 0.0, 0.0}}, b{{1.0, 0.0, 0.3}};
    const double c = std::sqrt(9.8);
    const Vec3 h = hll_flux(m, a, b).value;
    const Vec3 r = scalar_viscosity_flux(m, a, b, c).value;
    for (int k = 0; k < 3; ++k) CHECK(h[k] == doctest::Approx(r[k]).epsilon(1e-12));
}

TEST_CASE("MUSCL reconstruction") {
    // Constant field: identity.
    const Vec3 c{{1.0, 0.5, -0.2}};
    const MusclStates mc = muscl_reconstruct(c, c, c, c, Limiter::none);
    for (int k = 0; k < 3; ++k) {
        CHECK(mc.left[k] == doctest::Approx(c[k]));
        CHECK(mc.right[k] == doctest::Approx(c[k]));
    }
    CHECK_FALSE(mc.first_order_fallback);

    // Linear field, no limiter: exact interface values.
    auto lin = [](double x) { return Vec3{{2.0 + 0.3 * x, 1.0 - 0.2 * x, 0.1 * x}}; };
    const MusclStates ml =
        muscl_reconstruct(lin(-1.0), lin(0.0), lin(1.0), lin(2.0), Limiter::none);
    for (int k = 0; k < 3; ++k) {
        CHECK(ml.left[k] == doctest::Approx(lin(0.5)[k]).epsilon(1e-14));
        CHECK(ml.right[k] == doctest::Approx(lin(0.5)[k]).epsilon(1e-14));
    }

    // Minmod keeps reconstruction inside the data range at an extremum.
    const Vec3 lo{{1.0, 0.0, 0.0}}, hi{{2.0, 0.0, 0.0}};
    const MusclStates mm = muscl_reconstruct(lo, hi, lo, hi, Limiter::minmod);
    CHECK(mm.left[0] == doctest::Approx(2.0));   // slope limited to zero
    CHECK(mm.right[0] == doctest::Approx(1.0));

    // Vacuum-threatening reconstruction falls back to first order.
    const Vec3 big{{10.0, 0.0, 0.0}}, tiny{{0.1, 0.0, 0.0}}, small{{0.2, 0.0, 0.0}};
    const MusclStates mf = muscl_reconstruct(big, tiny, small, small, Limiter::none);
    CHECK(mf.first_order_fallback);
    CHECK(mf.left[0] == doctest::Approx(tiny[0]));
    CHECK(mf.right[0] == doctest::Approx(small[0]));
}

TEST_CASE("assembled MUSCL + scalar-viscosity stencil matches the Fourier symbol") {
    // Mirror of the production assembly on the linearized 2x2 system: slopes
    // (v_{j+1}-v_{j-1})/2, interface extrapolation by half a slope, flux
    // A (vL+vR)/2 - (q/4)(vR - vL), wide centered third difference for B.
    LinearizedSetup s;
    s.u_bar = 0.4;
    s.c_bar = 1.1;
    s.sigma_bar = 0.6;
    const double dx = 0.02, dt = 1e-4;
    const int n = 64;
    const Mat2 a = matrix_A(s);
    const Mat2 b = matrix_B(s);
    const SpatialScheme sp{SpatialKind::muscl_lf};
    const double q = sp.scalar_q(s, dx, dt);

    auto apply_operator = [&](const std::vector<Vec2>& v, std::vector<Vec2>& out) {
        auto at = [&](int j) { return v[static_cast<std::size_t>(((j % n) + n) % n)]; };
        std::vector<Vec2> flux(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const Vec2 slope_l = 0.5 * (at(j + 1) - at(j - 1));
            const Vec2 slope_r = 0.5 * (at(j + 2) - at(j));
            const Vec2 vl = at(j) + 0.5 * slope_l;
            const Vec2 vr = at(j + 1) - 0.5 * slope_r;
            flux[static_cast<std::size_t>(j)] =
                0.5 * (a * (vl + vr)) - (q / 4.0) * (vr - vl);
        }
        auto fat = [&](int j) { return flux[static_cast<std::size_t>(((j % n) + n) % n)]; };
        for (int j = 0; j < n; ++j) {
            const Vec2 third =
                at(j + 2) - 2.0 * at(j + 1) + 2.0 * at(j - 1) - at(j - 2);
            out[static_cast<std::size_t>(j)] =
                (-1.0 / dx) * (fat(j) - fat(j - 1)) +
                (1.0 / (2.0 * dx * dx * dx)) * (b * third);
        }
    };

    std::mt19937 rng(53);
    std::uniform_real_distribution<double> dv(-1.0, 1.0);
    for (int mode : {1, 3, 7, 19, 31}) {
        const double theta = 2.0 * M_PI * mode / n;
        const double xi = 2.0 * std::sin(0.5 * theta) / dx;
        const Mat2c symbol = muscl_symbol(s, sp, xi, dx, dt);
        const cplx c0(dv(rng), dv(rng)), c1(dv(rng), dv(rng));

        // Real and imaginary parts of vhat e^{i j theta} pushed separately
        // through the real operator.
        std::vector<Vec2> vre(static_cast<std::size_t>(n)), vim(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const cplx phase = std::exp(cplx(0.0, -theta * j));
            vre[static_cast<std::size_t>(j)] =
                Vec2{{std::real(c0 * phase), std::real(c1 * phase)}};
            vim[static_cast<std::size_t>(j)] =
                Vec2{{std::imag(c0 * phase), std::imag(c1 * phase)}};
        }
        std::vector<Vec2> ore(static_cast<std::size_t>(n)), oim(static_cast<std::size_t>(n));
        apply_operator(vre, ore);
        apply_operator(vim, oim);

        // Expected action: i xi * symbol * vhat, times the phase.
        const cplx e0 = cplx(0.0, xi) * (symbol(0, 0) * c0 + symbol(0, 1) * c1);
        const cplx e1 = cplx(0.0, xi) * (symbol(1, 0) * c0 + symbol(1, 1) * c1);
        double err = 0.0, scale = std::abs(e0) + std::abs(e1) + 1.0;
        for (int j = 0; j < n; ++j) {
            const cplx phase = std::exp(cplx(0.0, -theta * j));
            const cplx g0(ore[static_cast<std::size_t>(j)][0], oim[static_cast<std::size_t>(j)][0]);
            const cplx g1(ore[static_cast<std::size_t>(j)][1], oim[static_cast<std::size_t>(j)][1]);
            err = std::max(err, std::abs(g0 - e0 * phase));
            err = std::max(err, std::abs(g1 - e1 * phase));
        }
        CHECK(err < 1e-12 * scale);
    }
}
