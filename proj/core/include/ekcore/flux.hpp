#pragma once

#include <optional>
#include <utility>

#include "ekcore/linalg.hpp"
#include "ekcore/model.hpp"

// Interface fluxes for the convective part of the extended system, in the
// viscosity form f_{j+1/2} = (f(v_l)+f(v_r))/2 - Q (z_r - z_l)/2, plus the
// path-integrated entropy-conservative flux and MUSCL reconstruction.

namespace ek {

enum class FluxKind { lax_friedrichs, modified_lf, rusanov, hll, entropy_conservative };
enum class Limiter { none, minmod };

struct FluxSpec {
    FluxKind kind = FluxKind::rusanov;
    double extra_viscosity = 0.0;  // p-tilde added on top of the local wave speed
    int quadrature_order = 8;      // Gauss-Legendre points for path integrals
    bool muscl = false;
    Limiter limiter = Limiter::none;
};

struct InterfaceFlux {
    Vec3 value{};
    // Equivalent symmetric viscosity matrix on entropy variables; absent for
    // fluxes that are not in scalar/matrix viscosity form (HLL).
    std::optional<Mat3> viscosity_matrix_Q;
    double entropy_flux_G0 = 0.0;
};

// Scalar-viscosity flux f = avg - (p/2)(v_r - v_l). When assemble_Q is set the
// equivalent Q = p * int_0^1 dv/dz along the z-segment is attached.
InterfaceFlux scalar_viscosity_flux(const FluidModel& m, const Vec3& v_l,
                                    const Vec3& v_r, double p, bool assemble_Q = false,
                                    int quadrature_order = 8);

// Rusanov/LF viscosity coefficient: p-tilde plus the largest convective wave
// speed of the two states.
double rusanov_p(const FluidModel& m, const Vec3& v_l, const Vec3& v_r,
                 double p_tilde);

// Tadmor path-integrated viscosity matrix Q* and the associated
// entropy-conservative flux f* = (g(z_l)+g(z_r))/2 - Q* (z_r - z_l)/2.
Mat3 entropy_conservative_Q(const FluidModel& m, const Vec3& z_l, const Vec3& z_r,
                            int quadrature_order);
InterfaceFlux entropy_conservative_flux(const FluidModel& m, const Vec3& z_l,
                                        const Vec3& z_r, int quadrature_order = 8);

// HLL flux with Davis wave-speed bounds; value only.
InterfaceFlux hll_flux(const FluidModel& m, const Vec3& v_l, const Vec3& v_r);

// Numerical entropy flux of a viscosity-form flux value:
//   G0 = <(z_l+z_r)/2, f> - (psi(z_l)+psi(z_r))/2.
double numerical_entropy_flux_g0(const FluidModel& m, const Vec3& z_l, const Vec3& z_r,
                                 const Vec3& flux_value);

// MUSCL linear reconstruction at the interface between cells 1 and 2 of the
// 4-cell window (v_{j-1}, v_j, v_{j+1}, v_{j+2}). Returns the left/right
// interface states; falls back to first order (flagged) if a reconstructed
// density is nonpositive.
struct MusclStates {
    Vec3 left{};
    Vec3 right{};
    bool first_order_fallback = false;
};
MusclStates muscl_reconstruct(const Vec3& vm, const Vec3& v0, const Vec3& vp,
                              const Vec3& vpp, Limiter limiter);

// Flux value dispatch used by the solvers (first-order path).
Vec3 flux_value(const FluidModel& m, const FluxSpec& spec, const Vec3& v_l,
                const Vec3& v_r);

}  // namespace ek
