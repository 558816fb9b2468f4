#include "ekcore/original.hpp"

#include <cmath>
#include <stdexcept>

namespace ek {

namespace {
inline int wrap(int j, int n) { return ((j % n) + n) % n; }
}

double original_total_entropy(const FluidModel& m, const OriginalState& s) {
    const int n = s.n();
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const double h = s.h[static_cast<std::size_t>(j)];
        if (!(h > 0.0)) throw PositivityError(j, s.time);
        const double u = s.hu[static_cast<std::size_t>(j)] / h;
        const double grad = (s.h[static_cast<std::size_t>(wrap(j + 1, n))] -
                             s.h[static_cast<std::size_t>(wrap(j - 1, n))]) /
                            (2.0 * s.dx);
        sum += 0.5 * h * u * u + fast_energy_density(m, h) +
               0.5 * fast_kappa(m, h) * grad * grad;
    }
    return sum * s.dx;
}

OriginalSolver::OriginalSolver(FluidModel model, FluxSpec flux, Temporal temporal)
    : model_(std::move(model)), flux_(flux), temporal_(temporal) {
    if (temporal_ == Temporal::backward_euler)
        throw std::invalid_argument("the height-formulation baseline is explicit only");
}

void OriginalSolver::set_state(const OriginalState& s) {
    state_ = s;
    const std::size_t n = s.h.size();
    k1_.assign(2 * n, 0.0);
    k2_.assign(2 * n, 0.0);
    stage_h_.assign(n, 0.0);
    stage_hu_.assign(n, 0.0);
}

void OriginalSolver::rhs(const std::vector<double>& h, const std::vector<double>& hu,
                         std::vector<double>& out) {
    const int n = static_cast<int>(h.size());
    const double dx = state_.dx;
    const double p_tilde = flux_.extra_viscosity;
    const double inv_dx = 1.0 / dx;
    const double cap_coeff = 1.0 / (2.0 * dx * dx * dx);

    // Interface fluxes with optional MUSCL reconstruction on (h, hu).
    std::vector<double> fh(static_cast<std::size_t>(n)), fq(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        // interface between cells k and k+1
        const int l = k, r = wrap(k + 1, n);
        double hl = h[static_cast<std::size_t>(l)], ql = hu[static_cast<std::size_t>(l)];
        double hr = h[static_cast<std::size_t>(r)], qr = hu[static_cast<std::size_t>(r)];
        double jump_coeff = 0.5;
        if (flux_.muscl) {
            const int ll = wrap(k - 1, n), rr = wrap(k + 2, n);
            auto slope = [&](double a, double b, double c) {
                if (flux_.limiter == Limiter::minmod) {
                    const double d1 = b - a, d2 = c - b;
                    if (d1 > 0 && d2 > 0) return std::min(d1, d2);
                    if (d1 < 0 && d2 < 0) return std::max(d1, d2);
                    return 0.0;
                }
                return 0.5 * (c - a);
            };
            const double shl = slope(h[static_cast<std::size_t>(ll)], hl, hr);
            const double sql = slope(hu[static_cast<std::size_t>(ll)], ql, qr);
            const double shr = slope(hl, hr, h[static_cast<std::size_t>(rr)]);
            const double sqr = slope(ql, qr, hu[static_cast<std::size_t>(rr)]);
            const double hl2 = hl + 0.5 * shl, hr2 = hr - 0.5 * shr;
            if (hl2 > 0.0 && hr2 > 0.0) {
                hl = hl2;
                ql += 0.5 * sql;
                hr = hr2;
                qr -= 0.5 * sqr;
                jump_coeff = 0.25;
            }
        }
        const double ul = ql / hl, ur = qr / hr;
        const double cl = std::abs(ul) + std::sqrt(fast_pressure_prime(model_, hl));
        const double cr = std::abs(ur) + std::sqrt(fast_pressure_prime(model_, hr));
        const double p = p_tilde + std::max(cl, cr);
        fh[static_cast<std::size_t>(k)] =
            0.5 * (ql + qr) - jump_coeff * p * (hr - hl);
        fq[static_cast<std::size_t>(k)] =
            0.5 * (ql * ul + fast_pressure(model_, hl) + qr * ur +
                   fast_pressure(model_, hr)) -
            jump_coeff * p * (qr - ql);
    }

    out.resize(2 * static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const int km = wrap(j - 1, n);
        const double third = h[static_cast<std::size_t>(wrap(j + 2, n))] -
                             2.0 * h[static_cast<std::size_t>(wrap(j + 1, n))] +
                             2.0 * h[static_cast<std::size_t>(wrap(j - 1, n))] -
                             h[static_cast<std::size_t>(wrap(j - 2, n))];
        const double cap = fast_kappa(model_, h[static_cast<std::size_t>(j)]) *
                           h[static_cast<std::size_t>(j)] * third * cap_coeff;
        out[static_cast<std::size_t>(2 * j)] =
            -(fh[static_cast<std::size_t>(j)] - fh[static_cast<std::size_t>(km)]) * inv_dx;
        out[static_cast<std::size_t>(2 * j + 1)] =
            -(fq[static_cast<std::size_t>(j)] - fq[static_cast<std::size_t>(km)]) * inv_dx + cap;
    }
}

void OriginalSolver::step(double dt) {
    const int n = state_.n();
    rhs(state_.h, state_.hu, k1_);
    for (int j = 0; j < n; ++j) {
        stage_h_[static_cast<std::size_t>(j)] =
            state_.h[static_cast<std::size_t>(j)] + dt * k1_[static_cast<std::size_t>(2 * j)];
        stage_hu_[static_cast<std::size_t>(j)] =
            state_.hu[static_cast<std::size_t>(j)] + dt * k1_[static_cast<std::size_t>(2 * j + 1)];
        if (!(stage_h_[static_cast<std::size_t>(j)] > 0.0))
            throw PositivityError(j, state_.time);
    }
    if (temporal_ == Temporal::forward_euler) {
        state_.h.swap(stage_h_);
        state_.hu.swap(stage_hu_);
    } else {
        rhs(stage_h_, stage_hu_, k2_);
        for (int j = 0; j < n; ++j) {
            state_.h[static_cast<std::size_t>(j)] +=
                0.5 * dt *
                (k1_[static_cast<std::size_t>(2 * j)] + k2_[static_cast<std::size_t>(2 * j)]);
            state_.hu[static_cast<std::size_t>(j)] +=
                0.5 * dt *
                (k1_[static_cast<std::size_t>(2 * j + 1)] + k2_[static_cast<std::size_t>(2 * j + 1)]);
            if (!(state_.h[static_cast<std::size_t>(j)] > 0.0))
                throw PositivityError(j, state_.time);
        }
    }
    state_.time += dt;
}

}  // namespace ek
