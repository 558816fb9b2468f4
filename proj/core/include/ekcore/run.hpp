#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ekcore/diagnostics.hpp"
#include "ekcore/hamiltonian.hpp"
#include "ekcore/scenario.hpp"

// Simulation drivers shared by the CLI and the test harness. Snapshot files
// are "<prefix>_snapshot_<k>.csv" with columns (x, h, u, w, entropy_density);
// diagnostics go to "<prefix>_diagnostics.csv".

namespace ek {

struct RunOptions {
    std::string out_dir;        // empty: no files written
    std::string prefix = "run";
    int diag_stride = 0;        // 0: choose so that ~2000 samples are kept
    bool original_formulation = false;  // height-formulation baseline
    std::function<void(double, const ConservedState&)> on_snapshot;
};

struct RunResult {
    DiagnosticsSeries diag;
    ConservedState final_state;
    std::vector<double> snapshot_times;
};

RunResult run_simulation(const Scenario& sc, const RunOptions& opt = {});

struct HamiltonianRunOptions {
    std::string out_dir;
    std::string prefix = "ham";
    double dt = 0.0;            // required
    double newton_tol = 1e-11;
    int diag_stride = 0;
    std::function<void(double, const HamiltonianState&)> on_snapshot;
};

struct HamiltonianRunResult {
    std::vector<double> times;           // diagnostic samples
    std::vector<double> hamiltonian;     // raw per-cell sum
    std::vector<double> momentum;
    std::vector<double> zone_width;
    HamiltonianState final_state;
    std::vector<double> snapshot_times;
};

// Hamiltonian run of a periodic scenario (backward Euler stepping).
HamiltonianRunResult run_hamiltonian(const Scenario& sc,
                                     const HamiltonianRunOptions& opt);

}  // namespace ek
