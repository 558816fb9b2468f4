#include "ekcore/flux.hpp"

#include <cmath>
#include <stdexcept>

namespace ek {

namespace {

double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

double wave_speed(const FluidModel& m, const Vec3& v) {
    const double u = v[1] / v[0];
    return std::abs(u) + std::sqrt(m.pressure_prime(v[0]));
}

}  // namespace

InterfaceFlux scalar_viscosity_flux(const FluidModel& m, const Vec3& v_l,
                                    const Vec3& v_r, double p, bool assemble_Q,
                                    int quadrature_order) {
    if (!(v_l[0] > 0.0 && v_r[0] > 0.0)) throw std::domain_error("nonpositive density");
    if (p < 0.0) throw std::invalid_argument("viscosity coefficient must be >= 0");
    const Vec3 fl = convective_flux(m, v_l);
    const Vec3 fr = convective_flux(m, v_r);
    InterfaceFlux out;
    out.value = 0.5 * (fl + fr) - (0.5 * p) * (v_r - v_l);

    const Vec3 z_l = entropy_variables_point(m, v_l);
    const Vec3 z_r = entropy_variables_point(m, v_r);
    out.entropy_flux_G0 = numerical_entropy_flux_g0(m, z_l, z_r, out.value);

    if (assemble_Q) {
        // Q = p * int_0^1 dv/dz(z_l + t (z_r - z_l)) dt, symmetric since dv/dz
        // is a Hessian.
        Mat3 q;
        const Quadrature gl = gauss_legendre(quadrature_order, 0.0, 1.0);
        const Vec3 dz = z_r - z_l;
        for (std::size_t k = 0; k < gl.points.size(); ++k) {
            const Vec3 zt = z_l + gl.points[k] * dz;
            const Vec3 vt = conserved_from_entropy(m, zt);
            q += gl.weights[k] * dv_dz(m, vt);
        }
        q *= p;
        out.viscosity_matrix_Q = q;
    }
    return out;
}

double rusanov_p(const FluidModel& m, const Vec3& v_l, const Vec3& v_r,
                 double p_tilde) {
    if (!(v_l[0] > 0.0 && v_r[0] > 0.0)) throw std::domain_error("nonpositive density");
    return p_tilde + std::max(wave_speed(m, v_l), wave_speed(m, v_r));
}

Mat3 entropy_conservative_Q(const FluidModel& m, const Vec3& z_l, const Vec3& z_r,
                            int quadrature_order) {
    Mat3 q;
    const Quadrature gl = gauss_legendre(quadrature_order, -0.5, 0.5);
    const Vec3 mid = 0.5 * (z_l + z_r);
    const Vec3 dz = z_r - z_l;
    for (std::size_t k = 0; k < gl.points.size(); ++k) {
        const Vec3 zt = mid + gl.points[k] * dz;
        const Vec3 vt = conserved_from_entropy(m, zt);
        if (!(vt[0] > 0.0)) throw std::domain_error("vacuum along the z-segment");
        q += (gl.weights[k] * 2.0 * gl.points[k]) * dg_dz(m, vt);
    }
    return q;
}

InterfaceFlux entropy_conservative_flux(const FluidModel& m, const Vec3& z_l,
                                        const Vec3& z_r, int quadrature_order) {
    if (quadrature_order < 2)
        throw std::invalid_argument("entropy-conservative flux needs quadrature order >= 2");
    const Vec3 g_l = convective_flux(m, conserved_from_entropy(m, z_l));
    const Vec3 g_r = convective_flux(m, conserved_from_entropy(m, z_r));
    const Mat3 qstar = entropy_conservative_Q(m, z_l, z_r, quadrature_order);
    InterfaceFlux out;
    out.value = 0.5 * (g_l + g_r) - 0.5 * (qstar * (z_r - z_l));
    out.viscosity_matrix_Q = qstar;
    out.entropy_flux_G0 = numerical_entropy_flux_g0(m, z_l, z_r, out.value);
    return out;
}

InterfaceFlux hll_flux(const FluidModel& m, const Vec3& v_l, const Vec3& v_r) {
    if (!(v_l[0] > 0.0 && v_r[0] > 0.0)) throw std::domain_error("nonpositive density");
    const double ul = v_l[1] / v_l[0], ur = v_r[1] / v_r[0];
    const double cl = std::sqrt(m.pressure_prime(v_l[0]));
    const double cr = std::sqrt(m.pressure_prime(v_r[0]));
    const double sl = std::min(ul - cl, ur - cr);
    const double sr = std::max(ul + cl, ur + cr);
    const Vec3 fl = convective_flux(m, v_l);
    const Vec3 fr = convective_flux(m, v_r);
    InterfaceFlux out;
    if (sl >= 0.0) {
        out.value = fl;
    } else if (sr <= 0.0) {
        out.value = fr;
    } else {
        out.value = (1.0 / (sr - sl)) * (sr * fl - sl * fr + (sl * sr) * (v_r - v_l));
    }
    const Vec3 z_l = entropy_variables_point(m, v_l);
    const Vec3 z_r = entropy_variables_point(m, v_r);
    out.entropy_flux_G0 = numerical_entropy_flux_g0(m, z_l, z_r, out.value);
    return out;
}

double numerical_entropy_flux_g0(const FluidModel& m, const Vec3& z_l, const Vec3& z_r,
                                 const Vec3& flux_value) {
    const Vec3 zbar = 0.5 * (z_l + z_r);
    return zbar.dot(flux_value) -
           0.5 * (flux_potential(m, z_l) + flux_potential(m, z_r));
}

MusclStates muscl_reconstruct(const Vec3& vm, const Vec3& v0, const Vec3& vp,
                              const Vec3& vpp, Limiter limiter) {
    MusclStates out;
    Vec3 slope0, slope1;
    if (limiter == Limiter::minmod) {
        for (int c = 0; c < 3; ++c) {
            slope0[c] = minmod(v0[c] - vm[c], vp[c] - v0[c]);
            slope1[c] = minmod(vp[c] - v0[c], vpp[c] - vp[c]);
        }
    } else {
        slope0 = 0.5 * (vp - vm);
        slope1 = 0.5 * (vpp - v0);
    }
    out.left = v0 + 0.5 * slope0;
    out.right = vp - 0.5 * slope1;
    if (!(out.left[0] > 0.0) || !(out.right[0] > 0.0)) {
        out.left = v0;
        out.right = vp;
        out.first_order_fallback = true;
    }
    return out;
}

Vec3 flux_value(const FluidModel& m, const FluxSpec& spec, const Vec3& v_l,
                const Vec3& v_r) {
    switch (spec.kind) {
        case FluxKind::lax_friedrichs:
        case FluxKind::modified_lf:
        case FluxKind::rusanov: {
            const double p = rusanov_p(m, v_l, v_r, spec.extra_viscosity);
            const Vec3 fl = convective_flux(m, v_l);
            const Vec3 fr = convective_flux(m, v_r);
            return 0.5 * (fl + fr) - (0.5 * p) * (v_r - v_l);
        }
        case FluxKind::hll:
            return hll_flux(m, v_l, v_r).value;
        case FluxKind::entropy_conservative: {
            const Vec3 z_l = entropy_variables_point(m, v_l);
            const Vec3 z_r = entropy_variables_point(m, v_r);
            return entropy_conservative_flux(m, z_l, z_r, spec.quadrature_order).value;
        }
    }
    return Vec3{};
}

}  // namespace ek
