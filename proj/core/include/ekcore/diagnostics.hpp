#pragma once

#include <vector>

#include "ekcore/model.hpp"

namespace ek {

struct DiagnosticsSeries {
    std::vector<double> times;
    std::vector<double> total_entropy;
    std::vector<double> relative_entropy;  // normalized by the first sample
    std::vector<double> mass;
    std::vector<double> momentum;
    std::vector<double> consistency_error_max;  // zero when not applicable
    std::vector<int> newton_iters;

    void push(double t, double entropy, double m, double mom, int iters,
              double consistency_max = 0.0);
};

// Relative error between the transported (h w) field and the centered
// discrete form of the defining gradient relation:
//   err_j = |(hw)_j - sqrt(kappa) (h_{j+1}^{3/2} - h_{j-1}^{3/2})/(3 dx)| / ||hw||
// with ||hw|| the discrete L2 norm. Returns zeros (flagged) when ||hw|| = 0.
struct ConsistencyError {
    std::vector<double> err;
    bool degenerate = false;  // ||hw|| was zero
    double max_err = 0.0;
};
ConsistencyError consistency_error(const FluidModel& m, const ConservedState& s);

// Periodicity check for saturated downstream wave trains: estimates the
// dominant wavelength by autocorrelation over [x_lo, x_hi] and reports the
// worst pairwise L2 distance between consecutive periods, relative to the
// profile RMS.
struct WaveTrainMetrics {
    double wavelength = 0.0;          // in x units
    double periodicity_distance = 1.0;  // relative period-to-period L2 distance
    int maxima_per_wavelength = 0;     // strict local maxima within one period
    bool valid = false;
};
WaveTrainMetrics wave_train_metrics(const std::vector<double>& h, double dx,
                                    double x0, double x_lo, double x_hi);

}  // namespace ek
