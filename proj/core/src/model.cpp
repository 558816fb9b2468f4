#include "ekcore/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ek {

namespace {

void require_positive(double rho) {
    if (!(rho > 0.0)) throw std::domain_error("nonpositive density");
}

}  // namespace

FluidModel shallow_water_model(double g, double kappa) {
    if (!(g > 0.0)) throw std::invalid_argument("gravity must be positive");
    if (kappa < 0.0) throw std::invalid_argument("kappa must be nonnegative");
    FluidModel m;
    m.kappa = [kappa](double) { return kappa; };
    m.kappa_prime = [](double) { return 0.0; };
    m.pressure = [g](double h) { return 0.5 * g * h * h; };
    m.pressure_prime = [g](double h) { return g * h; };
    m.energy_density = [g](double h) { return 0.5 * g * h * h; };
    m.energy_density_prime = [g](double h) { return g * h; };
    m.energy_slope_inverse = [g](double y) { return y / g; };
    m.kappa_is_constant = true;
    return m;
}

FluidModel liu_gollub_model(double froude_sq, double kappa) {
    if (!(froude_sq > 0.0)) throw std::invalid_argument("froude_sq must be positive");
    FluidModel m;
    const double f2 = froude_sq;
    m.kappa = [kappa](double) { return kappa; };
    m.kappa_prime = [](double) { return 0.0; };
    m.pressure = [f2](double h) { return 0.5 * h * h / f2 + 0.08 * h * h * h * h * h; };
    m.pressure_prime = [f2](double h) { return h / f2 + 0.4 * h * h * h * h; };
    m.energy_density = [f2](double h) { return 0.5 * h * h / f2 + 0.02 * h * h * h * h * h; };
    m.energy_density_prime = [f2](double h) { return h / f2 + 0.1 * h * h * h * h; };
    m.energy_slope_inverse = [f2](double y) {
        // F'(h) = h/f2 + h^4/10 is strictly increasing on h >= 0.
        if (y <= 0.0) return 0.0;
        double h = std::min(y * f2, std::pow(10.0 * y, 0.25));
        if (h <= 0.0) h = y * f2;
        for (int it = 0; it < 80; ++it) {
            const double r = h / f2 + 0.1 * h * h * h * h - y;
            const double dr = 1.0 / f2 + 0.4 * h * h * h;
            const double step = r / dr;
            h -= step;
            if (h <= 0.0) h = 0.5 * (h + step);  // fall back toward the bracket
            if (std::abs(step) <= 1e-15 * (std::abs(h) + 1e-300)) break;
        }
        return h;
    };
    m.kappa_is_constant = true;
    return m;
}

double entropy(const FluidModel& m, const Vec3& v) {
    require_positive(v[0]);
    const double u = v[1] / v[0];
    const double w = v[2] / v[0];
    return 0.5 * v[0] * (u * u + w * w) + m.energy_density(v[0]);
}

Vec3 entropy_variables_point(const FluidModel& m, const Vec3& v) {
    require_positive(v[0]);
    const double u = v[1] / v[0];
    const double w = v[2] / v[0];
    return Vec3{{m.energy_density_prime(v[0]) - 0.5 * (u * u + w * w), u, w}};
}

Vec3 conserved_from_entropy(const FluidModel& m, const Vec3& z) {
    const double u = z[1];
    const double w = z[2];
    const double rho = m.energy_slope_inverse(z[0] + 0.5 * (u * u + w * w));
    if (!(rho > 0.0)) throw std::domain_error("entropy variables outside the state space");
    return Vec3{{rho, rho * u, rho * w}};
}

Vec3 convective_flux(const FluidModel& m, const Vec3& v) {
    require_positive(v[0]);
    const double u = v[1] / v[0];
    return Vec3{{v[1], v[1] * u + m.pressure(v[0]), v[2] * u}};
}

Mat3 convective_flux_jacobian(const FluidModel& m, const Vec3& v) {
    require_positive(v[0]);
    const double u = v[1] / v[0];
    const double w = v[2] / v[0];
    Mat3 j;
    j(0, 0) = 0.0;
    j(0, 1) = 1.0;
    j(0, 2) = 0.0;
    j(1, 0) = m.pressure_prime(v[0]) - u * u;
    j(1, 1) = 2.0 * u;
    j(1, 2) = 0.0;
    j(2, 0) = -u * w;
    j(2, 1) = w;
    j(2, 2) = u;
    return j;
}

double mu(const FluidModel& m, double rho) {
    require_positive(rho);
    return rho * std::sqrt(rho * m.kappa(rho));
}

Mat3 entropy_hessian(const FluidModel& m, const Vec3& v) {
    require_positive(v[0]);
    const double rho = v[0];
    const double u = v[1] / rho;
    const double w = v[2] / rho;
    const double fpp = m.pressure_prime(rho) / rho;  // F''(rho) = P'(rho)/rho
    Mat3 h;
    h(0, 0) = fpp + (u * u + w * w) / rho;
    h(0, 1) = -u / rho;
    h(0, 2) = -w / rho;
    h(1, 0) = -u / rho;
    h(1, 1) = 1.0 / rho;
    h(1, 2) = 0.0;
    h(2, 0) = -w / rho;
    h(2, 1) = 0.0;
    h(2, 2) = 1.0 / rho;
    return h;
}

Mat3 dv_dz(const FluidModel& m, const Vec3& v) {
    require_positive(v[0]);
    const double rho = v[0];
    const double u = v[1] / rho;
    const double w = v[2] / rho;
    const double fpp = m.pressure_prime(rho) / rho;
    Mat3 r;
    r(0, 0) = 1.0 / fpp;
    r(0, 1) = u / fpp;
    r(0, 2) = w / fpp;
    r(1, 0) = u / fpp;
    r(1, 1) = rho + u * u / fpp;
    r(1, 2) = u * w / fpp;
    r(2, 0) = w / fpp;
    r(2, 1) = u * w / fpp;
    r(2, 2) = rho + w * w / fpp;
    return r;
}

double entropy_flux_g0(const FluidModel& m, const Vec3& v) {
    require_positive(v[0]);
    const double u = v[1] / v[0];
    return u * (entropy(m, v) + m.pressure(v[0]));
}

double flux_potential(const FluidModel& m, const Vec3& z) {
    const Vec3 v = conserved_from_entropy(m, z);
    const Vec3 g = convective_flux(m, v);
    return z.dot(g) - entropy_flux_g0(m, v);
}

Mat3 dg_dz(const FluidModel& m, const Vec3& v) {
    // del_z g = del_v f * dv/dz; symmetric because g is the gradient of the
    // flux potential.
    require_positive(v[0]);
    const double rho = v[0];
    const double u = v[1] / rho;
    const double w = v[2] / rho;
    const double fpp = m.pressure_prime(rho) / rho;
    const double pp = m.pressure_prime(rho);
    Mat3 r;
    r(0, 0) = u / fpp;
    r(0, 1) = rho + u * u / fpp;
    r(0, 2) = u * w / fpp;
    r(1, 0) = r(0, 1);
    r(1, 1) = u * (pp + u * u) / fpp + 2.0 * u * rho;
    r(1, 2) = w * (pp + u * u) / fpp;
    r(2, 0) = r(0, 2);
    r(2, 1) = r(1, 2);
    r(2, 2) = u * rho + u * w * w / fpp;
    return r;
}

EntropyVariables entropy_variables(const FluidModel& m, const ConservedState& s) {
    EntropyVariables z;
    const int n = s.n_cells();
    z.z1.resize(static_cast<std::size_t>(n));
    z.z2.resize(static_cast<std::size_t>(n));
    z.z3.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const Vec3 zj = entropy_variables_point(m, cell_state(s, j));
        z.z1[static_cast<std::size_t>(j)] = zj[0];
        z.z2[static_cast<std::size_t>(j)] = zj[1];
        z.z3[static_cast<std::size_t>(j)] = zj[2];
    }
    return z;
}

std::vector<double> w_from_density(const FluidModel& m,
                                   const std::vector<double>& rho_field, double dx) {
    const int n = static_cast<int>(rho_field.size());
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double rho = rho_field[static_cast<std::size_t>(j)];
        require_positive(rho);
        const double rp = rho_field[static_cast<std::size_t>((j + 1) % n)];
        const double rm = rho_field[static_cast<std::size_t>((j - 1 + n) % n)];
        w[static_cast<std::size_t>(j)] =
            std::sqrt(m.kappa(rho) / rho) * (rp - rm) / (2.0 * dx);
    }
    return w;
}

double total_entropy(const FluidModel& m, const ConservedState& s) {
    double sum = 0.0;
    for (int j = 0; j < s.n_cells(); ++j) sum += entropy(m, cell_state(s, j));
    return sum * s.dx();
}

double total_mass(const ConservedState& s) {
    double sum = 0.0;
    for (double r : s.rho) sum += r;
    return sum * s.dx();
}

double total_momentum(const ConservedState& s) {
    double sum = 0.0;
    for (double q : s.mom) sum += q;
    return sum * s.dx();
}

}  // namespace ek
