#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ekcore/linalg.hpp"
#include "ekcore/model.hpp"

// Fourier-symbol stability analysis of the linearized system
//   d_t v + A d_x v = B d_xxx v,
// discretized with three-point (or MUSCL) schemes in space and forward/
// backward Euler, theta, RK2 or Crank-Nicolson stepping in time. The symbol
// convention follows the semi-discrete update d vhat/dt = i xi M(xi, dx) vhat
// with xi = 2 sin(theta/2)/dx in [-2/dx, 2/dx].

namespace ek {

struct LinearizedSetup {
    double rho_bar = 1.0;
    double u_bar = 0.0;
    double c_bar = 1.0;    // sqrt(P'(rho_bar))
    double sigma_bar = 0;  // rho_bar * kappa(rho_bar)
};

LinearizedSetup linearize(const FluidModel& m, double rho_bar, double u_bar);

enum class SpatialKind {
    lax_friedrichs,   // Q = Id            (q = 1/lambda1)
    modified_lf,      // Q = Id/2          (q = 1/(2 lambda1))
    rusanov,          // Q = lambda1 rho(A) Id
    godunov_roe,      // Q = lambda1 |A|
    centered,         // Q = 0
    muscl_lf,         // MUSCL stencil, q = 1/lambda1
    muscl_rusanov,    // MUSCL stencil, q = rho(A)
    muscl_centered,   // MUSCL stencil, Q = 0
};

struct SpatialScheme {
    SpatialKind kind = SpatialKind::lax_friedrichs;
    // Optional scalar viscosity override; when >= 0 it replaces the
    // kind-derived q for the scalar-viscosity kinds.
    double q = -1.0;

    bool is_muscl() const {
        return kind == SpatialKind::muscl_lf || kind == SpatialKind::muscl_rusanov ||
               kind == SpatialKind::muscl_centered;
    }
    bool scalar_viscosity() const { return kind != SpatialKind::godunov_roe; }
    // The scalar q such that Q = lambda1 * q * Id.
    double scalar_q(const LinearizedSetup& setup, double dx, double dt) const;
};

enum class TemporalKind { forward_euler, backward_euler, theta, rk2, crank_nicolson };

struct TemporalScheme {
    TemporalKind kind = TemporalKind::forward_euler;
    double theta = 0.0;  // only for TemporalKind::theta

    double effective_theta() const;  // FE=0, BE=1, CN=1/2
};

struct StabilityVerdict {
    bool stable = false;
    double max_amplification = 0.0;
    double worst_xi = 0.0;
    int scanned_points = 0;
    bool necessary_condition_ok = true;  // xi * Im(Lambda_pm) >= 0 on the grid
};

inline constexpr double kGrowthTol = 1e-10;

// Constant-coefficient matrices of the linearization.
Mat2 matrix_A(const LinearizedSetup& s);
Mat2 matrix_B(const LinearizedSetup& s);

// |A| of the Godunov/Roe viscosity; throws for c_bar == 0.
Mat2 godunov_abs_A(const LinearizedSetup& s);

double spectral_radius_A(const LinearizedSetup& s);

// Symbol M(xi, dx) of the three-point semi-discretization; requires
// |xi| <= 2/dx.
Mat2c first_order_symbol(const LinearizedSetup& s, const SpatialScheme& spatial,
                         double xi, double dx, double dt);

// MUSCL symbol.
Mat2c muscl_symbol(const LinearizedSetup& s, const SpatialScheme& spatial, double xi,
                   double dx, double dt);

Mat2c scheme_symbol(const LinearizedSetup& s, const SpatialScheme& spatial, double xi,
                    double dx, double dt);

// Closed-form eigenvalues for the scalar-viscosity first-order family.
std::pair<cplx, cplx> lf_family_eigenvalues(const LinearizedSetup& s, double q,
                                            double xi, double dx, double dt);

// Closed-form eigenvalues for the scalar-viscosity MUSCL family.
std::pair<cplx, cplx> muscl_family_eigenvalues(const LinearizedSetup& s, double q,
                                               double xi, double dx, double dt);

// Leading-order expansion of xi * Im(Lambda_pm) for the Godunov symbol at
// large |xi|; diagnostic companion to the numeric eigenvalues.
std::pair<double, double> godunov_branch_asymptote(const LinearizedSetup& s, double xi,
                                                   double dx);

// Modulus of the scalar update factor of the time discretization applied to
// one symbol eigenvalue.
double amplification(const TemporalScheme& t, cplx lambda, double xi, double dt);

StabilityVerdict stability_scan(const LinearizedSetup& s, const SpatialScheme& spatial,
                                const TemporalScheme& temporal, double dx, double dt,
                                int n_xi = 2049);

enum class BoundKind { lax_friedrichs, modified_lf, rusanov, muscl_lf, muscl_rusanov,
                       godunov_roe, centered };

// Sufficient closed-form CFL bound (max admissible dt; +inf when
// unconditional). The first-order bounds take the theta of the time
// discretization; the MUSCL bounds are for RK2 stepping and ignore theta.
double cfl_bound_closed_form(const LinearizedSetup& s, BoundKind kind, double theta,
                             double dx);

struct CriticalDt {
    double dt = 0.0;
    bool found = false;           // false when no stable dt exists in the bracket
    bool stable_at_max = false;   // stable everywhere up to the bracket top
    bool monotone_ok = true;      // spot-check of verdict monotonicity in dt
};

// Brute-force critical time step: largest dt whose scan verdict is stable,
// located by bisection inside [1e-12 dx^2, 10 dx].
CriticalDt critical_dt_bisection(const LinearizedSetup& s, const SpatialScheme& spatial,
                                 const TemporalScheme& temporal, double dx,
                                 double rel_tol = 1e-3, int n_xi = 1025);

}  // namespace ek
