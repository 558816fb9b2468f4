#include "ekcore/vn_stability.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ek {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double zeta_of(double xi, double dx) {
    const double s = 0.25 * xi * xi * dx * dx;
    if (s > 1.0 + 1e-12) throw std::domain_error("xi outside the resolvable band");
    return std::sqrt(std::max(0.0, 1.0 - s));
}

}  // namespace

LinearizedSetup linearize(const FluidModel& m, double rho_bar, double u_bar) {
    if (!(rho_bar > 0.0)) throw std::domain_error("nonpositive density");
    LinearizedSetup s;
    s.rho_bar = rho_bar;
    s.u_bar = u_bar;
    s.c_bar = std::sqrt(m.pressure_prime(rho_bar));
    s.sigma_bar = rho_bar * m.kappa(rho_bar);
    return s;
}

double SpatialScheme::scalar_q(const LinearizedSetup& setup, double dx, double dt) const {
    if (q >= 0.0) return q;
    const double lambda1 = dt / dx;
    switch (kind) {
        case SpatialKind::lax_friedrichs:
        case SpatialKind::muscl_lf:
            return 1.0 / lambda1;
        case SpatialKind::modified_lf:
            return 0.5 / lambda1;
        case SpatialKind::rusanov:
        case SpatialKind::muscl_rusanov:
            return spectral_radius_A(setup);
        case SpatialKind::centered:
        case SpatialKind::muscl_centered:
            return 0.0;
        case SpatialKind::godunov_roe:
            throw std::logic_error("Godunov viscosity is not scalar");
    }
    return 0.0;
}

double TemporalScheme::effective_theta() const {
    switch (kind) {
        case TemporalKind::forward_euler: return 0.0;
        case TemporalKind::backward_euler: return 1.0;
        case TemporalKind::crank_nicolson: return 0.5;
        case TemporalKind::theta: return theta;
        case TemporalKind::rk2: throw std::logic_error("RK2 is not a theta scheme");
    }
    return 0.0;
}

Mat2 matrix_A(const LinearizedSetup& s) {
    Mat2 a;
    a(0, 0) = 0.0;
    a(0, 1) = 1.0;
    a(1, 0) = s.c_bar * s.c_bar - s.u_bar * s.u_bar;
    a(1, 1) = 2.0 * s.u_bar;
    return a;
}

Mat2 matrix_B(const LinearizedSetup& s) {
    Mat2 b;
    b(1, 0) = s.sigma_bar;
    return b;
}

Mat2 godunov_abs_A(const LinearizedSetup& s) {
    const double u = s.u_bar, c = s.c_bar;
    if (!(c > 0.0)) throw std::domain_error("degenerate state: c_bar = 0");
    const double lp = u + c, lm = u - c;
    Mat2 m;
    m(0, 0) = (std::abs(lm) * lp - std::abs(lp) * lm) / (2.0 * c);
    m(0, 1) = (std::abs(lp) - std::abs(lm)) / (2.0 * c);
    m(1, 0) = (c * c - u * u) * (std::abs(lp) - std::abs(lm)) / (2.0 * c);
    m(1, 1) = (std::abs(lp) * lp - std::abs(lm) * lm) / (2.0 * c);
    return m;
}

double spectral_radius_A(const LinearizedSetup& s) {
    return std::max(std::abs(s.u_bar + s.c_bar), std::abs(s.u_bar - s.c_bar));
}

Mat2c first_order_symbol(const LinearizedSetup& s, const SpatialScheme& spatial,
                         double xi, double dx, double dt) {
    const double zeta = zeta_of(xi, dx);
    Mat2 re = matrix_A(s) + (xi * xi) * matrix_B(s);
    re *= zeta;
    Mat2 qm;
    if (spatial.kind == SpatialKind::godunov_roe) {
        qm = (dt / dx) * godunov_abs_A(s);
    } else {
        const double q = spatial.scalar_q(s, dx, dt);
        qm = ((dt / dx) * q) * Mat2::identity();
    }
    Mat2c m = to_complex(re);
    const cplx visc = cplx(0.0, xi * dx * dx / (2.0 * dt));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) += visc * qm(i, j);
    return m;
}

Mat2c muscl_symbol(const LinearizedSetup& s, const SpatialScheme& spatial, double xi,
                   double dx, double dt) {
    const double zeta = zeta_of(xi, dx);
    const double stretch = 1.0 + 0.25 * xi * xi * dx * dx;  // 2 - zeta^2
    Mat2 re = stretch * matrix_A(s) + (xi * xi) * matrix_B(s);
    re *= zeta;
    Mat2 qm;
    if (spatial.kind == SpatialKind::godunov_roe) {
        qm = (dt / dx) * godunov_abs_A(s);
    } else {
        const double q = spatial.scalar_q(s, dx, dt);
        qm = ((dt / dx) * q) * Mat2::identity();
    }
    Mat2c m = to_complex(re);
    const cplx visc = cplx(0.0, xi * xi * xi * dx * dx * dx * dx / (16.0 * dt));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) += visc * qm(i, j);
    return m;
}

Mat2c scheme_symbol(const LinearizedSetup& s, const SpatialScheme& spatial, double xi,
                    double dx, double dt) {
    return spatial.is_muscl() ? muscl_symbol(s, spatial, xi, dx, dt)
                              : first_order_symbol(s, spatial, xi, dx, dt);
}

std::pair<cplx, cplx> lf_family_eigenvalues(const LinearizedSetup& s, double q,
                                            double xi, double dx, double dt) {
    (void)dt;
    const double zeta = zeta_of(xi, dx);
    const double disp = std::sqrt(s.c_bar * s.c_bar + s.sigma_bar * xi * xi);
    const cplx visc(0.0, 0.5 * xi * dx * q);
    return {cplx(zeta * (s.u_bar + disp), 0.0) + visc,
            cplx(zeta * (s.u_bar - disp), 0.0) + visc};
}

std::pair<cplx, cplx> muscl_family_eigenvalues(const LinearizedSetup& s, double q,
                                               double xi, double dx, double dt) {
    (void)dt;
    const double zeta = zeta_of(xi, dx);
    const double z2 = zeta * zeta;
    const double stretch = 2.0 - z2;
    const double disp = std::sqrt(s.c_bar * s.c_bar + s.sigma_bar * xi * xi / stretch);
    const cplx visc(0.0, 0.25 * q * xi * dx * (1.0 - z2));
    return {cplx(zeta * stretch * (s.u_bar + disp), 0.0) + visc,
            cplx(zeta * stretch * (s.u_bar - disp), 0.0) + visc};
}

std::pair<double, double> godunov_branch_asymptote(const LinearizedSetup& s, double xi,
                                                   double dx) {
    const double zeta = zeta_of(xi, dx);
    const double a12 = godunov_abs_A(s)(0, 1);
    const double sig = s.sigma_bar;
    const double root = std::sqrt(sig * sig * zeta * zeta * zeta * zeta +
                                  2.0 * sig * zeta * std::sqrt(1.0 - zeta * zeta) * a12);
    const double mag = xi * std::abs(xi) * (root - sig * zeta * zeta);
    return {mag, -mag};
}

double amplification(const TemporalScheme& t, cplx lambda, double xi, double dt) {
    const cplx mu = cplx(0.0, 1.0) * xi * dt * lambda;
    switch (t.kind) {
        case TemporalKind::forward_euler:
            return std::abs(1.0 + mu);
        case TemporalKind::backward_euler: {
            const double d = std::abs(1.0 - mu);
            if (d == 0.0) throw std::domain_error("singular resolvent in BE step");
            return 1.0 / d;
        }
        case TemporalKind::rk2:
            return std::abs(1.0 + mu + 0.5 * mu * mu);
        case TemporalKind::theta:
        case TemporalKind::crank_nicolson: {
            const double th = t.effective_theta();
            if (th < 0.0 || th > 1.0) throw std::domain_error("theta outside [0,1]");
            const double d = std::abs(1.0 - th * mu);
            if (d == 0.0) throw std::domain_error("singular resolvent in theta step");
            return std::abs(1.0 + (1.0 - th) * mu) / d;
        }
    }
    return 0.0;
}

StabilityVerdict stability_scan(const LinearizedSetup& s, const SpatialScheme& spatial,
                                const TemporalScheme& temporal, double dx, double dt,
                                int n_xi) {
    if (n_xi < 64) throw std::invalid_argument("n_xi must be at least 64");
    StabilityVerdict v;
    v.scanned_points = n_xi;
    const double xi_max = 2.0 / dx;
    for (int k = 0; k < n_xi; ++k) {
        const double xi = -xi_max + (2.0 * xi_max) * k / (n_xi - 1);
        const Mat2c m = scheme_symbol(s, spatial, xi, dx, dt);
        const auto [l1, l2] = eigenvalues(m);
        for (const cplx lam : {l1, l2}) {
            const double neas = xi * std::imag(lam);
            if (neas < -1e-13 * (1.0 + std::abs(xi * lam))) v.necessary_condition_ok = false;
            const double g = amplification(temporal, lam, xi, dt);
            if (g > v.max_amplification) {
                v.max_amplification = g;
                v.worst_xi = xi;
            }
        }
    }
    v.stable = v.max_amplification <= 1.0 + kGrowthTol;
    return v;
}

double cfl_bound_closed_form(const LinearizedSetup& s, BoundKind kind, double theta,
                             double dx) {
    // The first-order theta-scheme bounds follow from the exact per-mode
    // condition dt (1-2 theta) xi^2 |Lambda|^2 <= 2 xi Im(Lambda) and the
    // majorization max(sup_s |u| + sqrt(c^2 + 4 sigma s/dx^2), q)^2 <= ...,
    // which for the scalar-viscosity family yields
    //   ((|u|+c) lambda1 + 2 sqrt(sigma) lambda2)^2 <= q lambda1 / (1-2 theta).
    const double u = std::abs(s.u_bar);
    const double c = std::abs(s.c_bar);
    const double sig = s.sigma_bar;
    const double rhoA = spectral_radius_A(s);

    const bool unconditional = theta >= 0.5;
    const double one_minus = 1.0 - 2.0 * theta;

    auto scalar_family = [&](double q_lambda1) {
        // q*lambda1 fixed (LF: 1, mLF: 1/2). Solve
        //   ((u+c) l1 + 2 sqrt(sig) l2)^2 <= q_lambda1 / (1-2 theta)
        if (unconditional) return kInf;
        const double rhs = std::sqrt(q_lambda1 / one_minus);
        const double denom = (u + c) / dx + 2.0 * std::sqrt(sig) / (dx * dx);
        if (denom == 0.0) return kInf;
        return rhs / denom;
    };

    switch (kind) {
        case BoundKind::lax_friedrichs:
            return scalar_family(1.0);
        case BoundKind::modified_lf:
            return scalar_family(0.5);
        case BoundKind::rusanov: {
            if (unconditional) return kInf;
            if (rhoA == 0.0) return kInf;
            // max( (u dx + sqrt(c^2 dx^2 + 4 sigma))^2 lambda3, rhoA^2 lambda1 )
            //   <= rhoA / (1 - 2 theta)
            const double w = u * dx + std::sqrt(c * c * dx * dx + 4.0 * sig);
            const double dt_dispersive =
                rhoA * dx * dx * dx / (one_minus * w * w);
            const double dt_advective = dx / (one_minus * rhoA);
            return std::min(dt_dispersive, dt_advective);
        }
        case BoundKind::muscl_lf: {
            // RK2 time stepping: lambda1 (|u| + sqrt(c^2 + 2 sigma/dx^2)) <= 1.
            const double denom = u + std::sqrt(c * c + 2.0 * sig / (dx * dx));
            if (denom == 0.0) return kInf;
            return dx / denom;
        }
        case BoundKind::muscl_rusanov: {
            // RK2 time stepping; leading-order dt = O(dx^{7/3}) bound, capped
            // by the hyperbolic requirement q lambda1 <= 2.
            const double dt_advective = rhoA > 0.0 ? 2.0 * dx / rhoA : kInf;
            if (sig == 0.0) return dt_advective;
            const double coeff = std::pow(std::sqrt(u + c) / sig, 2.0 / 3.0) *
                                 std::pow(7.0, 7.0 / 6.0) * std::sqrt(3.0) / 24.0;
            return std::min(coeff * std::pow(dx, 7.0 / 3.0), dt_advective);
        }
        case BoundKind::godunov_roe:
            return 0.0;  // unstable regardless of dt
        case BoundKind::centered:
            return unconditional ? kInf : 0.0;
    }
    return 0.0;
}

CriticalDt critical_dt_bisection(const LinearizedSetup& s, const SpatialScheme& spatial,
                                 const TemporalScheme& temporal, double dx,
                                 double rel_tol, int n_xi) {
    CriticalDt r;
    const double dt_lo = 1e-12 * dx * dx;
    const double dt_hi = 10.0 * dx;

    auto stable_at = [&](double dt) {
        return stability_scan(s, spatial, temporal, dx, dt, n_xi).stable;
    };

    // When xi * Im(Lambda) < 0 somewhere the scheme is unstable for every dt
    // even though one-step amplification at tiny dt sits inside the growth
    // tolerance. The sign pattern does not depend on dt for this family.
    if (!stability_scan(s, spatial, temporal, dx, dx * dx, n_xi).necessary_condition_ok)
        return r;

    if (!stable_at(dt_lo)) return r;  // unstable as dt -> 0+

    // Geometric sweep for the first unstable dt.
    double lo = dt_lo, hi = dt_lo;
    bool bracketed = false;
    while (hi < dt_hi) {
        const double next = std::min(hi * 4.0, dt_hi);
        if (!stable_at(next)) {
            lo = hi;
            hi = next;
            bracketed = true;
            break;
        }
        hi = next;
    }
    if (!bracketed) {
        r.dt = dt_hi;
        r.found = true;
        r.stable_at_max = true;
        return r;
    }

    while (hi - lo > rel_tol * hi) {
        const double mid = std::sqrt(lo * hi);
        if (stable_at(mid))
            lo = mid;
        else
            hi = mid;
    }
    r.dt = lo;
    r.found = true;

    // Spot-check monotonicity: a few samples below the critical value must be
    // stable.
    for (double f : {0.03, 0.1, 0.3, 0.7}) {
        if (!stable_at(std::max(dt_lo, f * lo))) {
            r.monotone_ok = false;
            break;
        }
    }
    return r;
}

}  // namespace ek
