#include "ekcore/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ek {

// ---------------------------------------------------------------------------
// BandedLU
// ---------------------------------------------------------------------------

BandedLU::BandedLU(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), stride_(2 * kl + ku + 1),
      band_(static_cast<std::size_t>(n) * static_cast<std::size_t>(stride_), 0.0),
      piv_(static_cast<std::size_t>(n), 0) {}

void BandedLU::zero() {
    std::fill(band_.begin(), band_.end(), 0.0);
    factored_ = false;
}

double& BandedLU::at(int i, int j) {
    // Row i of column j lives at offset kl + ku + i - j within the column.
    const int off = kl_ + ku_ + i - j;
    if (off < kl_ || off >= stride_) throw std::out_of_range("entry outside the band");
    return band_[static_cast<std::size_t>(j) * stride_ + off];
}

void BandedLU::factor() {
    // Banded LU with partial pivoting (dgbtrf-style, column version).
    for (int k = 0; k < n_; ++k) {
        const int pmax = std::min(n_ - 1, k + kl_);
        int piv = k;
        double big = std::abs(band_[static_cast<std::size_t>(k) * stride_ + kl_ + ku_]);
        for (int i = k + 1; i <= pmax; ++i) {
            const double v =
                std::abs(band_[static_cast<std::size_t>(k) * stride_ + kl_ + ku_ + i - k]);
            if (v > big) {
                big = v;
                piv = i;
            }
        }
        piv_[static_cast<std::size_t>(k)] = piv;
        if (big == 0.0) throw std::runtime_error("singular banded matrix");
        const int jmax = std::min(n_ - 1, k + kl_ + ku_);
        if (piv != k) {
            for (int j = k; j <= jmax; ++j) {
                double& a = band_[static_cast<std::size_t>(j) * stride_ + kl_ + ku_ + k - j];
                double& b = band_[static_cast<std::size_t>(j) * stride_ + kl_ + ku_ + piv - j];
                std::swap(a, b);
            }
        }
        const double diag = band_[static_cast<std::size_t>(k) * stride_ + kl_ + ku_];
        for (int i = k + 1; i <= pmax; ++i) {
            double& lik = band_[static_cast<std::size_t>(k) * stride_ + kl_ + ku_ + i - k];
            lik /= diag;
            const double l = lik;
            for (int j = k + 1; j <= jmax; ++j) {
                band_[static_cast<std::size_t>(j) * stride_ + kl_ + ku_ + i - j] -=
                    l * band_[static_cast<std::size_t>(j) * stride_ + kl_ + ku_ + k - j];
            }
        }
    }
    factored_ = true;
}

void BandedLU::solve(std::vector<double>& b) const {
    if (!factored_) throw std::logic_error("solve before factor");
    for (int k = 0; k < n_; ++k) {
        const int piv = piv_[static_cast<std::size_t>(k)];
        if (piv != k) std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(piv)]);
        const int imax = std::min(n_ - 1, k + kl_);
        const double bk = b[static_cast<std::size_t>(k)];
        for (int i = k + 1; i <= imax; ++i)
            b[static_cast<std::size_t>(i)] -=
                band_[static_cast<std::size_t>(k) * stride_ + kl_ + ku_ + i - k] * bk;
    }
    for (int k = n_ - 1; k >= 0; --k) {
        const int jmin = k;
        double s = b[static_cast<std::size_t>(k)];
        const int jmax = std::min(n_ - 1, k + kl_ + ku_);
        for (int j = jmin + 1; j <= jmax; ++j)
            s -= band_[static_cast<std::size_t>(j) * stride_ + kl_ + ku_ + k - j] *
                 b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(k)] =
            s / band_[static_cast<std::size_t>(k) * stride_ + kl_ + ku_];
    }
}

// ---------------------------------------------------------------------------
// CyclicBanded
// ---------------------------------------------------------------------------

CyclicBanded::CyclicBanded(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), band_(n, kl, ku) {}

void CyclicBanded::zero() {
    band_.zero();
    far_.clear();
    z_.clear();
    cap_.clear();
    cap_piv_.clear();
    factored_ = false;
}

int CyclicBanded::far_index(int col) {
    for (std::size_t k = 0; k < far_.size(); ++k)
        if (far_[k].col == col) return static_cast<int>(k);
    far_.push_back({col, {}});
    return static_cast<int>(far_.size()) - 1;
}

void CyclicBanded::add(int i, int j, double value) {
    if (value == 0.0) return;
    if (i - j <= kl_ && j - i <= ku_) {
        band_.at(i, j) += value;
    } else {
        far_[static_cast<std::size_t>(far_index(j))].entries.emplace_back(i, value);
    }
}

void CyclicBanded::factor() {
    band_.factor();
    const int r = static_cast<int>(far_.size());
    z_.assign(static_cast<std::size_t>(r), {});
    cap_.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(r), 0.0);
    cap_piv_.assign(static_cast<std::size_t>(r), 0);
    if (r == 0) {
        factored_ = true;
        return;
    }
    // Z_k = B^{-1} u_k with u_k the out-of-band part of column far_[k].col.
    for (int k = 0; k < r; ++k) {
        std::vector<double> u(static_cast<std::size_t>(n_), 0.0);
        for (const auto& [row, val] : far_[static_cast<std::size_t>(k)].entries)
            u[static_cast<std::size_t>(row)] += val;
        band_.solve(u);
        z_[static_cast<std::size_t>(k)] = std::move(u);
    }
    // Capacitance S = I + V^T Z, with V^T Z (k, l) = Z_l[col_k].
    for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
            double s = z_[static_cast<std::size_t>(l)]
                         [static_cast<std::size_t>(far_[static_cast<std::size_t>(k)].col)];
            if (k == l) s += 1.0;
            cap_[static_cast<std::size_t>(k) * r + l] = s;
        }
    // Dense LU with partial pivoting on the small capacitance matrix.
    for (int c = 0; c < r; ++c) {
        int piv = c;
        double big = std::abs(cap_[static_cast<std::size_t>(c) * r + c]);
        for (int i = c + 1; i < r; ++i) {
            const double v = std::abs(cap_[static_cast<std::size_t>(i) * r + c]);
            if (v > big) {
                big = v;
                piv = i;
            }
        }
        if (big == 0.0) throw std::runtime_error("singular Woodbury capacitance");
        cap_piv_[static_cast<std::size_t>(c)] = piv;
        if (piv != c)
            for (int j = 0; j < r; ++j)
                std::swap(cap_[static_cast<std::size_t>(c) * r + j],
                          cap_[static_cast<std::size_t>(piv) * r + j]);
        for (int i = c + 1; i < r; ++i) {
            cap_[static_cast<std::size_t>(i) * r + c] /= cap_[static_cast<std::size_t>(c) * r + c];
            const double l = cap_[static_cast<std::size_t>(i) * r + c];
            for (int j = c + 1; j < r; ++j)
                cap_[static_cast<std::size_t>(i) * r + j] -=
                    l * cap_[static_cast<std::size_t>(c) * r + j];
        }
    }
    factored_ = true;
}

void CyclicBanded::solve(std::vector<double>& b) const {
    if (!factored_) throw std::logic_error("solve before factor");
    band_.solve(b);
    const int r = static_cast<int>(far_.size());
    if (r == 0) return;
    // y = S^{-1} (V^T b)
    std::vector<double> y(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k)
        y[static_cast<std::size_t>(k)] =
            b[static_cast<std::size_t>(far_[static_cast<std::size_t>(k)].col)];
    for (int c = 0; c < r; ++c) {
        const int piv = cap_piv_[static_cast<std::size_t>(c)];
        if (piv != c) std::swap(y[static_cast<std::size_t>(c)], y[static_cast<std::size_t>(piv)]);
        for (int i = c + 1; i < r; ++i)
            y[static_cast<std::size_t>(i)] -= cap_[static_cast<std::size_t>(i) * r + c] *
                                              y[static_cast<std::size_t>(c)];
    }
    for (int c = r - 1; c >= 0; --c) {
        double s = y[static_cast<std::size_t>(c)];
        for (int j = c + 1; j < r; ++j)
            s -= cap_[static_cast<std::size_t>(c) * r + j] * y[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(c)] = s / cap_[static_cast<std::size_t>(c) * r + c];
    }
    // x = B^{-1} b - Z y
    for (int k = 0; k < r; ++k) {
        const double yk = y[static_cast<std::size_t>(k)];
        if (yk == 0.0) continue;
        const auto& zk = z_[static_cast<std::size_t>(k)];
        for (int i = 0; i < n_; ++i) b[static_cast<std::size_t>(i)] -= zk[static_cast<std::size_t>(i)] * yk;
    }
}

// ---------------------------------------------------------------------------
// StencilNewton
// ---------------------------------------------------------------------------

StencilNewton::StencilNewton(int n_cells, int n_comp, int width)
    : cells_(n_cells), comp_(n_comp), width_(width),
      mat_(n_cells * n_comp, n_comp * width + n_comp - 1, n_comp * width + n_comp - 1) {
    if (n_cells < 2 * width + 1)
        throw std::invalid_argument("grid too small for the stencil coloring");
}

void StencilNewton::invalidate() { have_jacobian_ = false; }

void StencilNewton::assemble_jacobian(const Residual& g, const std::vector<double>& x) {
    const int n = cells_ * comp_;
    const int colors = 2 * width_ + 1;
    std::vector<double> base(static_cast<std::size_t>(n));
    g(x, base);
    std::vector<double> xp = x;
    std::vector<double> gp(static_cast<std::size_t>(n));

    // Typical magnitude per component for the perturbation size, with
    // fallback to the overall scale (and to 1) for all-zero components.
    std::vector<double> typ(static_cast<std::size_t>(comp_), 0.0);
    double typ_max = 0.0;
    for (int j = 0; j < cells_; ++j)
        for (int c = 0; c < comp_; ++c) {
            const double v = std::abs(x[static_cast<std::size_t>(j * comp_ + c)]);
            typ[static_cast<std::size_t>(c)] = std::max(typ[static_cast<std::size_t>(c)], v);
            typ_max = std::max(typ_max, v);
        }
    for (double& t : typ) {
        if (t == 0.0) t = typ_max;
        if (t == 0.0) t = 1.0;
    }

    mat_.zero();
    const double sqrt_eps = std::sqrt(2.2204460492503131e-16);

    auto probe_cells = [&](const std::vector<int>& cells, int c) {
        std::vector<double> hs(static_cast<std::size_t>(cells_), 0.0);
        for (int j : cells) {
            const std::size_t idx = static_cast<std::size_t>(j * comp_ + c);
            const double h = sqrt_eps * std::max(std::abs(x[idx]),
                                                 0.01 * typ[static_cast<std::size_t>(c)]);
            xp[idx] = x[idx] + h;
            hs[static_cast<std::size_t>(j)] = h;
        }
        g(xp, gp);
        for (int j : cells) {
            const std::size_t col = static_cast<std::size_t>(j * comp_ + c);
            const double h = hs[static_cast<std::size_t>(j)];
            if (h == 0.0) continue;
            for (int dj = -width_; dj <= width_; ++dj) {
                const int cell = ((j + dj) % cells_ + cells_) % cells_;
                for (int rc = 0; rc < comp_; ++rc) {
                    const std::size_t row = static_cast<std::size_t>(cell * comp_ + rc);
                    const double d = (gp[row] - base[row]) / h;
                    if (d != 0.0) mat_.add(static_cast<int>(row), static_cast<int>(col), d);
                }
            }
            xp[col] = x[col];
        }
    };

    // Cells in the same color class must keep a cyclic distance above the
    // stencil width; the mod classes only guarantee that on the leading
    // multiple of `colors`, so the remainder cells are probed one by one.
    const int n_cut = cells_ - cells_ % colors;
    for (int color = 0; color < colors; ++color) {
        std::vector<int> cells;
        for (int j = color; j < n_cut; j += colors) cells.push_back(j);
        if (cells.empty()) continue;
        for (int c = 0; c < comp_; ++c) probe_cells(cells, c);
    }
    for (int j = n_cut; j < cells_; ++j) {
        const std::vector<int> single{j};
        for (int c = 0; c < comp_; ++c) probe_cells(single, c);
    }
    mat_.factor();
    have_jacobian_ = true;
}

StencilNewton::Result StencilNewton::solve(const Residual& g, std::vector<double>& x,
                                           double tol, int max_iter) {
    const int n = cells_ * comp_;
    Result res;
    std::vector<double> r(static_cast<std::size_t>(n));
    std::vector<double> trial(static_cast<std::size_t>(n));
    std::vector<double> rt(static_cast<std::size_t>(n));

    auto inf_norm = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double y : v) m = std::max(m, std::abs(y));
        return m;
    };

    g(x, r);
    double norm = inf_norm(r);
    for (int it = 0; it < max_iter; ++it) {
        res.residual_norm = norm;
        res.iterations = it;
        if (norm <= tol) {
            res.converged = true;
            return res;
        }
        if (!have_jacobian_) assemble_jacobian(g, x);
        std::vector<double> step = r;
        mat_.solve(step);

        // Damped update: halve the step while the trial residual blows up,
        // is non-evaluable (positivity), or fails to improve.
        double alpha = 1.0;
        bool accepted = false;
        double trial_norm = norm;
        for (int bt = 0; bt < 8; ++bt) {
            for (int i = 0; i < n; ++i)
                trial[static_cast<std::size_t>(i)] =
                    x[static_cast<std::size_t>(i)] - alpha * step[static_cast<std::size_t>(i)];
            bool ok = true;
            try {
                g(trial, rt);
            } catch (const std::exception&) {
                ok = false;
            }
            if (ok) {
                trial_norm = inf_norm(rt);
                if (trial_norm <= std::max(0.9 * norm, tol)) {
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            // The cached Jacobian is stale: rebuild once and retry; if that
            // already happened this iteration, give up.
            if (have_jacobian_) {
                invalidate();
                assemble_jacobian(g, x);
                std::vector<double> fresh = r;
                mat_.solve(fresh);
                alpha = 1.0;
                for (int bt = 0; bt < 12 && !accepted; ++bt) {
                    for (int i = 0; i < n; ++i)
                        trial[static_cast<std::size_t>(i)] =
                            x[static_cast<std::size_t>(i)] -
                            alpha * fresh[static_cast<std::size_t>(i)];
                    bool ok = true;
                    try {
                        g(trial, rt);
                    } catch (const std::exception&) {
                        ok = false;
                    }
                    if (ok) {
                        trial_norm = inf_norm(rt);
                        if (trial_norm < norm) accepted = true;
                    }
                    if (!accepted) alpha *= 0.5;
                }
            }
            if (!accepted) break;
        }
        x.swap(trial);
        r.swap(rt);
        norm = trial_norm;
        res.iterations = it + 1;
        // Slow contraction with the cached Jacobian: refresh for next round.
        if (norm > tol && trial_norm > 0.2 * res.residual_norm) invalidate();
    }
    res.residual_norm = norm;
    res.converged = norm <= tol;
    return res;
}

}  // namespace ek
