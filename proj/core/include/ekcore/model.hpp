#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ekcore/linalg.hpp"

// Equations of state and the extended three-field formulation of the 1D
// Euler-Korteweg system. The conserved state is v = (rho, rho*u, rho*w) where
// w carries the density gradient: w = sqrt(kappa(rho)) * d_x rho / sqrt(rho).

namespace ek {

using ScalarFn = std::function<double(double)>;

// Closed-form tag so the hot loops can inline the built-in closures instead
// of going through std::function.
enum class ModelForm { generic, shallow_water, liu_gollub };

struct FluidModel {
    ScalarFn kappa;                // capillary coefficient, kappa(rho) > 0
    ScalarFn kappa_prime;          // kappa'(rho)
    ScalarFn pressure;             // P(rho)
    ScalarFn pressure_prime;       // P'(rho) > 0
    ScalarFn energy_density;       // F(rho), with rho F' - F = P
    ScalarFn energy_density_prime; // F'(rho)
    // Inverse of F' on rho > 0; used to map entropy variables back to the
    // conserved state. Closed form for the built-in models.
    ScalarFn energy_slope_inverse;
    bool kappa_is_constant = false;

    ModelForm form = ModelForm::generic;
    double param_g = 0.0;          // shallow water gravity
    double param_froude_sq = 0.0;  // falling-film squared Froude number
    double param_kappa = 0.0;      // constant capillary coefficient
};

inline double fast_pressure(const FluidModel& m, double rho) {
    switch (m.form) {
        case ModelForm::shallow_water: return 0.5 * m.param_g * rho * rho;
        case ModelForm::liu_gollub:
            return 0.5 * rho * rho / m.param_froude_sq + 0.08 * rho * rho * rho * rho * rho;
        case ModelForm::generic: return m.pressure(rho);
    }
    return 0.0;
}

inline double fast_pressure_prime(const FluidModel& m, double rho) {
    switch (m.form) {
        case ModelForm::shallow_water: return m.param_g * rho;
        case ModelForm::liu_gollub:
            return rho / m.param_froude_sq + 0.4 * rho * rho * rho * rho;
        case ModelForm::generic: return m.pressure_prime(rho);
    }
    return 0.0;
}

inline double fast_energy_density(const FluidModel& m, double rho) {
    switch (m.form) {
        case ModelForm::shallow_water: return 0.5 * m.param_g * rho * rho;
        case ModelForm::liu_gollub:
            return 0.5 * rho * rho / m.param_froude_sq + 0.02 * rho * rho * rho * rho * rho;
        case ModelForm::generic: return m.energy_density(rho);
    }
    return 0.0;
}

inline double fast_kappa(const FluidModel& m, double rho) {
    return m.form == ModelForm::generic ? m.kappa(rho) : m.param_kappa;
}

inline double fast_mu(const FluidModel& m, double rho) {
    return rho * std::sqrt(rho * fast_kappa(m, rho));
}

// Shallow water with surface tension: P(h) = g h^2/2, F(h) = g h^2/2,
// constant kappa.
FluidModel shallow_water_model(double g, double kappa);

// Falling-film closure with P(h) = h^2/(2 F^2) + 2 h^5/25 and constant
// capillary coefficient; F(h) = h^2/(2 F^2) + h^5/50 is the unique energy
// density with F/h -> 0 at vacuum.
FluidModel liu_gollub_model(double froude_sq, double kappa);

enum class Boundary { periodic, inlet_outlet };

struct ConservedState {
    double x0 = 0.0;
    double length = 1.0;
    std::vector<double> rho;  // rho_j
    std::vector<double> mom;  // (rho u)_j
    std::vector<double> srw;  // (rho w)_j
    Boundary bc = Boundary::periodic;
    double time = 0.0;

    int n_cells() const { return static_cast<int>(rho.size()); }
    double dx() const { return length / n_cells(); }
    double x_center(int j) const { return x0 + (j + 0.5) * dx(); }
};

struct EntropyVariables {
    std::vector<double> z1, z2, z3;
};

// Pointwise operations on v = (rho, rho u, rho w). All require rho > 0 and
// throw std::domain_error otherwise.
double entropy(const FluidModel& m, const Vec3& v);
Vec3 entropy_variables_point(const FluidModel& m, const Vec3& v);
Vec3 conserved_from_entropy(const FluidModel& m, const Vec3& z);
Vec3 convective_flux(const FluidModel& m, const Vec3& v);
Mat3 convective_flux_jacobian(const FluidModel& m, const Vec3& v);
double mu(const FluidModel& m, double rho);

// Hessian of U(v) and its inverse (the Jacobian dv/dz), closed forms.
Mat3 entropy_hessian(const FluidModel& m, const Vec3& v);
Mat3 dv_dz(const FluidModel& m, const Vec3& v);

// Entropy flux of the convective part, G0(v) = u (U(v) + P(rho)).
double entropy_flux_g0(const FluidModel& m, const Vec3& v);

// Flux potential psi(z) = <z, g(z)> - G0(v(z)) with g(z) = f(v(z)).
double flux_potential(const FluidModel& m, const Vec3& z);

// Jacobian of g(z) = f(v(z)); symmetric by the entropy structure.
Mat3 dg_dz(const FluidModel& m, const Vec3& v);

EntropyVariables entropy_variables(const FluidModel& m, const ConservedState& s);

// Initializes w from a density field by centered differences (periodic
// indexing): w_j = sqrt(kappa(rho_j)/rho_j) * (rho_{j+1}-rho_{j-1})/(2 dx).
std::vector<double> w_from_density(const FluidModel& m,
                                   const std::vector<double>& rho_field,
                                   double dx);

// Cell accessors.
inline Vec3 cell_state(const ConservedState& s, int j) {
    return Vec3{{s.rho[static_cast<std::size_t>(j)], s.mom[static_cast<std::size_t>(j)],
                 s.srw[static_cast<std::size_t>(j)]}};
}

double total_entropy(const FluidModel& m, const ConservedState& s);  // sum U dx
double total_mass(const ConservedState& s);                          // sum rho dx
double total_momentum(const ConservedState& s);                      // sum rho*u dx

}  // namespace ek
