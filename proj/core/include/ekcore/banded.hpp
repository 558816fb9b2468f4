#pragma once

#include <functional>
#include <vector>

// Banded LU with partial pivoting plus a low-rank Woodbury correction for the
// periodic wrap-around couplings, and a chord-Newton driver with a
// finite-difference Jacobian assembled by stencil coloring.

namespace ek {

class BandedLU {
public:
    // n unknowns, kl sub- and ku super-diagonals.
    BandedLU(int n, int kl, int ku);

    void zero();
    // Accumulate into entry (i, j); |i - j| must fit in the band.
    double& at(int i, int j);

    void factor();                              // throws std::runtime_error if singular
    void solve(std::vector<double>& b) const;   // in place, after factor()

    int size() const { return n_; }

private:
    int n_, kl_, ku_, stride_;
    std::vector<double> band_;  // LAPACK-style storage with room for fill-in
    std::vector<int> piv_;
    bool factored_ = false;
};

// Sparse matrix with a banded core and a low-rank correction for entries
// outside the band (the periodic corners): A = B + sum_k u_k e_{c_k}^T.
class CyclicBanded {
public:
    CyclicBanded(int n, int kl, int ku);

    void zero();
    void add(int i, int j, double value);  // anywhere; out-of-band goes to the correction

    void factor();
    void solve(std::vector<double>& b) const;

private:
    int n_, kl_, ku_;
    BandedLU band_;
    // Out-of-band entries grouped by column.
    struct FarColumn {
        int col;
        std::vector<std::pair<int, double>> entries;
    };
    std::vector<FarColumn> far_;
    // Woodbury factors built at factor() time.
    mutable std::vector<std::vector<double>> z_;  // B^{-1} u_k
    std::vector<double> cap_;                     // dense LU of (I + V^T Z)
    std::vector<int> cap_piv_;
    bool factored_ = false;

    int far_index(int col);
};

// Newton solver for G(x) = 0 where G has a cyclic band structure: component c
// of cell j depends only on cells j-width .. j+width. The Jacobian is
// finite-difference, assembled with 2*width+1 colors per component, and
// reused across iterations (chord Newton) until convergence degrades.
class StencilNewton {
public:
    using Residual = std::function<void(const std::vector<double>&, std::vector<double>&)>;

    StencilNewton(int n_cells, int n_comp, int width);

    struct Result {
        bool converged = false;
        int iterations = 0;
        double residual_norm = 0.0;
    };

    // Solves G(x)=0 starting from x; tol is on the infinity norm of G.
    Result solve(const Residual& g, std::vector<double>& x, double tol, int max_iter);

    // Drop the cached Jacobian (forces re-assembly on the next solve).
    void invalidate();

private:
    int cells_, comp_, width_;
    CyclicBanded mat_;
    bool have_jacobian_ = false;

    void assemble_jacobian(const Residual& g, const std::vector<double>& x);
};

}  // namespace ek
