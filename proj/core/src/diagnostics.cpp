#include "ekcore/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace ek {

void DiagnosticsSeries::push(double t, double entropy, double m, double mom, int iters,
                             double consistency_max) {
    times.push_back(t);
    total_entropy.push_back(entropy);
    relative_entropy.push_back(total_entropy.front() != 0.0
                                   ? entropy / total_entropy.front()
                                   : 0.0);
    mass.push_back(m);
    momentum.push_back(mom);
    consistency_error_max.push_back(consistency_max);
    newton_iters.push_back(iters);
}

ConsistencyError consistency_error(const FluidModel& m, const ConservedState& s) {
    ConsistencyError out;
    const int n = s.n_cells();
    const double dx = s.dx();
    out.err.assign(static_cast<std::size_t>(n), 0.0);
    double norm2 = 0.0;
    for (int j = 0; j < n; ++j) {
        const double hw = s.srw[static_cast<std::size_t>(j)];
        norm2 += hw * hw * dx;
    }
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) {
        out.degenerate = true;
        return out;
    }
    const double sqrt_kappa = std::sqrt(fast_kappa(m, 1.0));
    auto h32 = [&](int j) {
        const double h = s.rho[static_cast<std::size_t>(((j % n) + n) % n)];
        return h * std::sqrt(h);
    };
    for (int j = 0; j < n; ++j) {
        int jp = j + 1, jm = j - 1;
        double scale = 3.0 * dx;
        if (s.bc != Boundary::periodic) {
            if (j == 0) { jm = 0; scale = 1.5 * dx; }
            if (j == n - 1) { jp = n - 1; scale = 1.5 * dx; }
        }
        const double target = sqrt_kappa * (h32(jp) - h32(jm)) / scale;
        const double e = std::abs(s.srw[static_cast<std::size_t>(j)] - target) / norm;
        out.err[static_cast<std::size_t>(j)] = e;
        out.max_err = std::max(out.max_err, e);
    }
    return out;
}

WaveTrainMetrics wave_train_metrics(const std::vector<double>& h, double dx, double x0,
                                    double x_lo, double x_hi) {
    WaveTrainMetrics out;
    const int n = static_cast<int>(h.size());
    int lo = std::max(0, static_cast<int>((x_lo - x0) / dx));
    int hi = std::min(n - 1, static_cast<int>((x_hi - x0) / dx));
    const int len = hi - lo + 1;
    if (len < 32) return out;

    std::vector<double> f(static_cast<std::size_t>(len));
    double mean = 0.0;
    for (int i = 0; i < len; ++i) mean += h[static_cast<std::size_t>(lo + i)];
    mean /= len;
    double rms = 0.0;
    for (int i = 0; i < len; ++i) {
        f[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(lo + i)] - mean;
        rms += f[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(i)];
    }
    rms = std::sqrt(rms / len);
    if (rms < 1e-14 * std::max(1.0, std::abs(mean))) return out;

    // Dominant period by the first autocorrelation maximum past the first
    // zero crossing.
    auto autocorr = [&](int lag) {
        double acc = 0.0;
        for (int i = 0; i + lag < len; ++i)
            acc += f[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(i + lag)];
        return acc / (len - lag);
    };
    int first_neg = -1;
    for (int lag = 1; lag < len / 2; ++lag) {
        if (autocorr(lag) < 0.0) {
            first_neg = lag;
            break;
        }
    }
    if (first_neg < 0) return out;
    double best = -1e300;
    for (int lag = first_neg + 1; lag < len / 2; ++lag)
        best = std::max(best, autocorr(lag));
    if (best <= 0.0) return out;
    // Smallest lag near the maximum (the fundamental, not a multiple), then
    // hill-climb onto the local peak.
    int best_lag = -1;
    for (int lag = first_neg + 1; lag < len / 2; ++lag) {
        if (autocorr(lag) >= 0.9 * best) {
            best_lag = lag;
            break;
        }
    }
    if (best_lag <= 2) return out;
    while (best_lag + 1 < len / 2 && autocorr(best_lag + 1) > autocorr(best_lag))
        ++best_lag;
    while (best_lag - 1 > first_neg && autocorr(best_lag - 1) > autocorr(best_lag))
        --best_lag;
    out.wavelength = best_lag * dx;

    // Consecutive-period distances with sub-cell alignment, so a fraction of
    // a cell of phase drift across a steep front does not read as
    // aperiodicity.
    const int periods = len / best_lag;
    if (periods < 2) return out;
    auto dist_at = [&](int p, double shift) {
        double acc = 0.0;
        int cnt = 0;
        for (int i = 0; i < best_lag; ++i) {
            const double pos = (p + 1) * best_lag + i + shift;
            const int i0 = static_cast<int>(std::floor(pos));
            if (i0 < 0 || i0 + 1 >= len) continue;
            const double frac = pos - i0;
            const double val = f[static_cast<std::size_t>(i0)] * (1.0 - frac) +
                               f[static_cast<std::size_t>(i0 + 1)] * frac;
            const double d = f[static_cast<std::size_t>(p * best_lag + i)] - val;
            acc += d * d;
            ++cnt;
        }
        return cnt > best_lag / 2 ? std::sqrt(acc / cnt) : 1e300;
    };
    double worst = 0.0;
    for (int p = 0; p + 1 < periods; ++p) {
        double best_d = 1e300;
        int best_s = 0;
        for (int s = -5; s <= 5; ++s) {
            const double d = dist_at(p, s);
            if (d < best_d) {
                best_d = d;
                best_s = s;
            }
        }
        // Golden-section refinement around the best integer shift.
        double lo = best_s - 1.0, hi = best_s + 1.0;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = dist_at(p, x1), f2 = dist_at(p, x2);
        for (int it = 0; it < 24; ++it) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = dist_at(p, x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = dist_at(p, x2);
            }
        }
        best_d = std::min(best_d, std::min(f1, f2));
        worst = std::max(worst, best_d / rms);
    }
    out.periodicity_distance = worst;

    // Strict local maxima within the last full period.
    const int start = (periods - 1) * best_lag;
    int maxima = 0;
    for (int i = std::max(1, start); i < std::min(len - 1, start + best_lag); ++i) {
        if (f[static_cast<std::size_t>(i)] > f[static_cast<std::size_t>(i - 1)] &&
            f[static_cast<std::size_t>(i)] > f[static_cast<std::size_t>(i + 1)])
            ++maxima;
    }
    out.maxima_per_wavelength = maxima;
    out.valid = true;
    return out;
}

}  // namespace ek
