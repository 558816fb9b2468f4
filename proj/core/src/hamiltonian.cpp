#include "ekcore/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ekcore/solver.hpp"

namespace ek {

namespace {

inline int wrap(int j, int n) { return ((j % n) + n) % n; }

}  // namespace

double discrete_hamiltonian(const FluidModel& m, const HamiltonianState& s) {
    const int n = s.n();
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = s.rho[static_cast<std::size_t>(i)];
        if (!(r > 0.0)) throw std::domain_error("nonpositive density");
        const double rp = s.rho[static_cast<std::size_t>(wrap(i + 1, n))];
        const double grad = (rp - r) / s.dx;
        const double ui = s.u[static_cast<std::size_t>(i)];
        sum += 0.5 * r * ui * ui + fast_energy_density(m, r) +
               0.5 * fast_kappa(m, r) * grad * grad;
    }
    return sum;
}

std::pair<std::vector<double>, std::vector<double>> grad_hamiltonian(
    const FluidModel& m, const HamiltonianState& s) {
    const int n = s.n();
    std::vector<double> grho(static_cast<std::size_t>(n));
    std::vector<double> gu(static_cast<std::size_t>(n));
    const double inv_dx2 = 1.0 / (s.dx * s.dx);
    for (int i = 0; i < n; ++i) {
        const double r = s.rho[static_cast<std::size_t>(i)];
        if (!(r > 0.0)) throw std::domain_error("nonpositive density");
        const double rp = s.rho[static_cast<std::size_t>(wrap(i + 1, n))];
        const double rm = s.rho[static_cast<std::size_t>(wrap(i - 1, n))];
        const double ui = s.u[static_cast<std::size_t>(i)];
        const double dplus = rp - r;
        const double dminus = r - rm;
        const double kp = m.form == ModelForm::generic ? m.kappa_prime(r) : 0.0;
        grho[static_cast<std::size_t>(i)] =
            0.5 * ui * ui + m.energy_density_prime(r) +
            0.5 * kp * dplus * dplus * inv_dx2 +
            (fast_kappa(m, s.rho[static_cast<std::size_t>(wrap(i - 1, n))]) * dminus -
             fast_kappa(m, r) * dplus) *
                inv_dx2;
        gu[static_cast<std::size_t>(i)] = r * ui;
    }
    return {std::move(grho), std::move(gu)};
}

std::pair<std::vector<double>, std::vector<double>> hamiltonian_rhs(
    const FluidModel& m, const HamiltonianState& s) {
    const int n = s.n();
    auto [grho, gu] = grad_hamiltonian(m, s);
    std::vector<double> drho(static_cast<std::size_t>(n));
    std::vector<double> du(static_cast<std::size_t>(n));
    const double c = 1.0 / (2.0 * s.dx);
    for (int i = 0; i < n; ++i) {
        const int ip = wrap(i + 1, n), im = wrap(i - 1, n);
        drho[static_cast<std::size_t>(i)] =
            -c * (gu[static_cast<std::size_t>(ip)] - gu[static_cast<std::size_t>(im)]);
        du[static_cast<std::size_t>(i)] =
            -c * (grho[static_cast<std::size_t>(ip)] - grho[static_cast<std::size_t>(im)]);
    }
    return {std::move(drho), std::move(du)};
}

double hamiltonian_momentum(const HamiltonianState& s) {
    double sum = 0.0;
    for (int i = 0; i < s.n(); ++i)
        sum += s.rho[static_cast<std::size_t>(i)] * s.u[static_cast<std::size_t>(i)];
    return sum;
}

// ---------------------------------------------------------------------------
// HamiltonianSolver
// ---------------------------------------------------------------------------

namespace {

// Interleaved (rho_i, u_i) layout helpers for the Newton solver.
void pack(const HamiltonianState& s, std::vector<double>& x) {
    const int n = s.n();
    x.resize(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(2 * i)] = s.rho[static_cast<std::size_t>(i)];
        x[static_cast<std::size_t>(2 * i + 1)] = s.u[static_cast<std::size_t>(i)];
    }
}

void unpack(const std::vector<double>& x, HamiltonianState& s) {
    const int n = static_cast<int>(x.size()) / 2;
    s.rho.resize(static_cast<std::size_t>(n));
    s.u.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        s.rho[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(2 * i)];
        s.u[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(2 * i + 1)];
    }
}

void rhs_flat(const FluidModel& m, const std::vector<double>& x, double dx,
              std::vector<double>& out) {
    HamiltonianState tmp;
    tmp.dx = dx;
    unpack(x, tmp);
    auto [drho, du] = hamiltonian_rhs(m, tmp);
    const int n = tmp.n();
    out.resize(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(2 * i)] = drho[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(2 * i + 1)] = du[static_cast<std::size_t>(i)];
    }
}

}  // namespace

HamiltonianSolver::HamiltonianSolver(FluidModel model, double newton_tol,
                                     int newton_max_iter)
    : model_(std::move(model)), tol_(newton_tol), max_iter_(newton_max_iter) {}

void HamiltonianSolver::set_state(const HamiltonianState& s) {
    state_ = s;
    h0_ = discrete_hamiltonian(model_, s);
    // grad_rho H couples cells i-1..i+1 and D widens by one: width 2.
    newton_ = std::make_unique<StencilNewton>(s.n(), 2, 2);
}

HamiltonianReport HamiltonianSolver::finish_report(const StencilNewton::Result& res) {
    HamiltonianReport rep;
    rep.h_value = discrete_hamiltonian(model_, state_);
    rep.h_drift_relative = (rep.h_value - h0_) / std::abs(h0_);
    rep.momentum_value = hamiltonian_momentum(state_);
    rep.newton_iters = res.iterations;
    rep.max_residual = res.residual_norm;
    return rep;
}

HamiltonianReport HamiltonianSolver::step_be(double dt) {
    std::vector<double> xn, x, scratch;
    pack(state_, xn);
    x = xn;
    auto residual = [&](const std::vector<double>& y, std::vector<double>& g) {
        rhs_flat(model_, y, state_.dx, scratch);
        g.resize(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) g[i] = y[i] - xn[i] - dt * scratch[i];
    };
    const auto res = newton_->solve(residual, x, tol_, max_iter_);
    if (!res.converged) throw NewtonError(res.residual_norm, res.iterations);
    unpack(x, state_);
    state_.time += dt;
    return finish_report(res);
}

HamiltonianReport HamiltonianSolver::step_cn(double dt) {
    std::vector<double> xn, x, scratch, rhs_n;
    pack(state_, xn);
    rhs_flat(model_, xn, state_.dx, rhs_n);
    x = xn;
    auto residual = [&](const std::vector<double>& y, std::vector<double>& g) {
        rhs_flat(model_, y, state_.dx, scratch);
        g.resize(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            g[i] = y[i] - xn[i] - 0.5 * dt * (scratch[i] + rhs_n[i]);
    };
    const auto res = newton_->solve(residual, x, tol_, max_iter_);
    if (!res.converged) throw NewtonError(res.residual_norm, res.iterations);
    unpack(x, state_);
    state_.time += dt;
    return finish_report(res);
}

HamiltonianReport HamiltonianSolver::step_avf(double dt, int quadrature_order) {
    std::vector<double> xn, x, scratch;
    pack(state_, xn);
    x = xn;
    const Quadrature gl = gauss_legendre(quadrature_order, 0.0, 1.0);
    const int n = state_.n();
    auto residual = [&](const std::vector<double>& y, std::vector<double>& g) {
        // Average the Hamiltonian gradient along the segment x^n -> y, then
        // apply the same skew operator as hamiltonian_rhs.
        std::vector<double> grho_avg(static_cast<std::size_t>(n), 0.0);
        std::vector<double> gu_avg(static_cast<std::size_t>(n), 0.0);
        HamiltonianState seg;
        seg.dx = state_.dx;
        std::vector<double> xs(y.size());
        for (std::size_t q = 0; q < gl.points.size(); ++q) {
            const double t = gl.points[q];
            for (std::size_t i = 0; i < y.size(); ++i)
                xs[i] = (1.0 - t) * xn[i] + t * y[i];
            unpack(xs, seg);
            auto [grho, gu] = grad_hamiltonian(model_, seg);
            for (int i = 0; i < n; ++i) {
                grho_avg[static_cast<std::size_t>(i)] += gl.weights[q] * grho[static_cast<std::size_t>(i)];
                gu_avg[static_cast<std::size_t>(i)] += gl.weights[q] * gu[static_cast<std::size_t>(i)];
            }
        }
        g.resize(y.size());
        const double c = 1.0 / (2.0 * state_.dx);
        for (int i = 0; i < n; ++i) {
            const int ip = wrap(i + 1, n), im = wrap(i - 1, n);
            const double drho = -c * (gu_avg[static_cast<std::size_t>(ip)] -
                                      gu_avg[static_cast<std::size_t>(im)]);
            const double du = -c * (grho_avg[static_cast<std::size_t>(ip)] -
                                    grho_avg[static_cast<std::size_t>(im)]);
            g[static_cast<std::size_t>(2 * i)] = y[static_cast<std::size_t>(2 * i)] -
                                                 xn[static_cast<std::size_t>(2 * i)] - dt * drho;
            g[static_cast<std::size_t>(2 * i + 1)] =
                y[static_cast<std::size_t>(2 * i + 1)] - xn[static_cast<std::size_t>(2 * i + 1)] -
                dt * du;
        }
    };
    const auto res = newton_->solve(residual, x, tol_, max_iter_);
    if (!res.converged) throw NewtonError(res.residual_norm, res.iterations);
    unpack(x, state_);
    state_.time += dt;
    return finish_report(res);
}

std::pair<HamiltonianState, HamiltonianReport> step_be_ham(const FluidModel& m,
                                                           const HamiltonianState& s,
                                                           double dt, double newton_tol) {
    HamiltonianSolver solver(m, newton_tol);
    solver.set_state(s);
    const HamiltonianReport rep = solver.step_be(dt);
    return {solver.state(), rep};
}

std::pair<HamiltonianState, HamiltonianReport> step_cn_ham(const FluidModel& m,
                                                           const HamiltonianState& s,
                                                           double dt, double newton_tol) {
    HamiltonianSolver solver(m, newton_tol);
    solver.set_state(s);
    const HamiltonianReport rep = solver.step_cn(dt);
    return {solver.state(), rep};
}

// ---------------------------------------------------------------------------
// Dispersive-shock metrics
// ---------------------------------------------------------------------------

ShockMetrics dispersive_shock_metrics(const std::vector<double>& h, double dx,
                                      double window_fraction) {
    ShockMetrics out;
    const int n = static_cast<int>(h.size());
    if (n < 8) return out;
    int half = std::max(1, static_cast<int>(window_fraction * n / 2.0));

    // Moving-average background (periodic).
    std::vector<double> detr(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = -half; k <= half; ++k) acc += h[static_cast<std::size_t>(wrap(i + k, n))];
        detr[static_cast<std::size_t>(i)] =
            h[static_cast<std::size_t>(i)] - acc / (2 * half + 1);
    }

    // Background RMS from the quietest quartile of cells, so a localized
    // oscillation zone does not inflate its own threshold and a domain-wide
    // wave train still clears it.
    std::vector<double> mags(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) mags[static_cast<std::size_t>(i)] = std::abs(detr[static_cast<std::size_t>(i)]);
    std::vector<double> sorted = mags;
    std::nth_element(sorted.begin(), sorted.begin() + n / 4, sorted.end());
    const double q25 = sorted[static_cast<std::size_t>(n / 4)];
    double acc = 0.0;
    int count = 0;
    for (double d : mags)
        if (d <= q25) {
            acc += d * d;
            ++count;
        }
    double hmax = h[0], hmin = h[0];
    for (double v : h) {
        hmax = std::max(hmax, v);
        hmin = std::min(hmin, v);
    }
    const double floor_scale = std::max(1e-13 * std::max(std::abs(hmax), 1.0),
                                        1e-9 * (hmax - hmin));
    const double rms = std::max(count > 0 ? std::sqrt(acc / count) : 0.0, floor_scale);

    int first = -1, last = -1, in_zone = 0;
    for (int i = 0; i < n; ++i) {
        if (mags[static_cast<std::size_t>(i)] > 3.0 * rms) {
            if (first < 0) first = i;
            last = i;
            ++in_zone;
        }
    }
    if (in_zone > 0) out.zone_width = (last - first + 1) * dx;

    for (int i = 0; i < n; ++i) {
        const double hm = h[static_cast<std::size_t>(wrap(i - 1, n))];
        const double hc = h[static_cast<std::size_t>(i)];
        const double hp = h[static_cast<std::size_t>(wrap(i + 1, n))];
        if (hc > hm && hc > hp) ++out.extrema_count;
        if (hc < hm && hc < hp) ++out.extrema_count;
    }
    return out;
}

}  // namespace ek
