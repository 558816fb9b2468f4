#pragma once

#include <vector>

#include "ekcore/model.hpp"
#include "ekcore/solver.hpp"

// Comparison baseline: direct discretization of the height formulation
//   d_t h + d_x(hu) = 0,
//   d_t(hu) + d_x(hu^2 + P(h)) = kappa h d_xxx h,
// with a classical flux for the convective part and the wide centered stencil
// for the third derivative. Periodic grids, constant kappa. Not a supported
// production solver.

namespace ek {

struct OriginalState {
    std::vector<double> h;
    std::vector<double> hu;
    double dx = 1.0;
    double time = 0.0;

    int n() const { return static_cast<int>(h.size()); }
};

// Discrete energy of the height formulation with a centered gradient.
double original_total_entropy(const FluidModel& m, const OriginalState& s);

class OriginalSolver {
public:
    OriginalSolver(FluidModel model, FluxSpec flux, Temporal temporal);

    void set_state(const OriginalState& s);
    const OriginalState& state() const { return state_; }

    void step(double dt);

private:
    FluidModel model_;
    FluxSpec flux_;
    Temporal temporal_;
    OriginalState state_;
    std::vector<double> k1_, k2_, stage_h_, stage_hu_;

    void rhs(const std::vector<double>& h, const std::vector<double>& hu,
             std::vector<double>& out);
};

}  // namespace ek
