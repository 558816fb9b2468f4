#include "ekcore/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "ekcore/csv.hpp"
#include "ekcore/original.hpp"
#include "ekcore/solver.hpp"

namespace ek {

namespace {

std::string snapshot_path(const RunOptions& opt, int k) {
    return opt.out_dir + "/" + opt.prefix + "_snapshot_" + std::to_string(k) + ".csv";
}

void write_snapshot(const FluidModel& m, const ConservedState& s,
                    const std::string& path) {
    CsvWriter csv(path, {"x", "h", "u", "w", "entropy_density"});
    for (int j = 0; j < s.n_cells(); ++j) {
        const Vec3 v = cell_state(s, j);
        csv.row({s.x_center(j), v[0], v[1] / v[0], v[2] / v[0], entropy(m, v)});
    }
}

}  // namespace

RunResult run_simulation(const Scenario& scenario, const RunOptions& opt) {
    Scenario sc = scenario;
    sc.resolve_time_step();
    for (double t : sc.snapshot_times)
        if (t < 0.0 || t > sc.end_time * (1.0 + 1e-12))
            throw std::invalid_argument("snapshot time outside [0, end_time]");
    const bool writing = !opt.out_dir.empty();
    if (writing) std::filesystem::create_directories(opt.out_dir);

    if (opt.original_formulation) {
        if (sc.bc != Boundary::periodic)
            throw std::invalid_argument("the height-formulation baseline is periodic only");
        // Height-formulation baseline: same grid and dt, two-field state.
        const ConservedState s0 = sc.initial_state();
        OriginalState os;
        os.h = s0.rho;
        os.hu = s0.mom;
        os.dx = s0.dx();
        OriginalSolver solver(sc.model, sc.solver.flux, sc.solver.temporal);
        solver.set_state(os);
        RunResult out;
        const double dt = sc.solver.dt;
        const long total = std::lround(std::ceil(sc.end_time / dt));
        const int stride =
            opt.diag_stride > 0 ? opt.diag_stride
                                : std::max(1L, total / 2000);
        long step = 0;
        auto record = [&]() {
            const OriginalState& s = solver.state();
            double mass = 0.0, mom = 0.0;
            for (int j = 0; j < s.n(); ++j) {
                mass += s.h[static_cast<std::size_t>(j)];
                mom += s.hu[static_cast<std::size_t>(j)];
            }
            out.diag.push(s.time, original_total_entropy(sc.model, s), mass * s.dx,
                          mom * s.dx, 0);
        };
        record();
        while (solver.state().time < sc.end_time - 1e-12 * sc.end_time) {
            const double step_dt =
                std::min(dt, sc.end_time - solver.state().time);
            solver.step(step_dt);
            ++step;
            if (step % stride == 0) record();
        }
        record();
        out.final_state = sc.initial_state();
        out.final_state.rho = solver.state().h;
        out.final_state.mom = solver.state().hu;
        out.final_state.time = solver.state().time;
        if (writing) {
            CsvWriter diag(opt.out_dir + "/" + opt.prefix + "_diagnostics.csv",
                           {"t", "total_entropy", "mass", "momentum", "newton_iters"});
            for (std::size_t i = 0; i < out.diag.times.size(); ++i)
                diag.row({out.diag.times[i], out.diag.total_entropy[i], out.diag.mass[i],
                          out.diag.momentum[i],
                          static_cast<double>(out.diag.newton_iters[i])});
        }
        return out;
    }

    ExtendedSolver solver(sc.model, sc.solver);
    ConservedState s0 = sc.initial_state();
    if (sc.solver.enforce_w) enforce_w_relation(sc.model, s0);
    solver.set_state(s0);

    RunResult out;
    const double dt = sc.solver.dt;
    if (!(dt > 0.0)) throw std::invalid_argument("nonpositive time step");
    const long total = std::lround(std::ceil(sc.end_time / dt));
    const int stride = opt.diag_stride > 0 ? opt.diag_stride : std::max(1L, total / 2000);

    std::vector<double> snaps = sc.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;
    int snap_index = 0;

    auto record = [&](int iters) {
        const ConservedState s = solver.state();
        out.diag.push(solver.time(), total_entropy(sc.model, s), total_mass(s),
                      total_momentum(s), iters,
                      consistency_error(sc.model, s).max_err);
    };
    record(0);
    long step = 0;
    while (solver.time() < sc.end_time - 1e-12 * std::max(sc.end_time, 1.0)) {
        double step_dt = std::min(dt, sc.end_time - solver.time());
        if (next_snap < snaps.size())
            step_dt = std::min(step_dt, snaps[next_snap] - solver.time());
        const StepReport rep = solver.step(step_dt);
        ++step;
        if (step % stride == 0) record(rep.newton_iters);
        if (next_snap < snaps.size() &&
            solver.time() >= snaps[next_snap] - 1e-12 * std::max(snaps[next_snap], 1.0)) {
            const ConservedState s = solver.state();
            if (writing) write_snapshot(sc.model, s, snapshot_path(opt, snap_index));
            if (opt.on_snapshot) opt.on_snapshot(solver.time(), s);
            out.snapshot_times.push_back(solver.time());
            ++next_snap;
            ++snap_index;
        }
    }
    record(0);
    out.final_state = solver.state();
    if (writing) {
        CsvWriter diag(opt.out_dir + "/" + opt.prefix + "_diagnostics.csv",
                       {"t", "total_entropy", "mass", "momentum", "newton_iters"});
        for (std::size_t i = 0; i < out.diag.times.size(); ++i)
            diag.row({out.diag.times[i], out.diag.total_entropy[i], out.diag.mass[i],
                      out.diag.momentum[i],
                      static_cast<double>(out.diag.newton_iters[i])});
    }
    return out;
}

HamiltonianRunResult run_hamiltonian(const Scenario& scenario,
                                     const HamiltonianRunOptions& opt) {
    if (!(opt.dt > 0.0)) throw std::invalid_argument("hamiltonian run needs dt > 0");
    Scenario sc = scenario;
    if (sc.bc != Boundary::periodic)
        throw std::invalid_argument("the Hamiltonian solver is periodic only");
    const bool writing = !opt.out_dir.empty();
    if (writing) std::filesystem::create_directories(opt.out_dir);

    const ConservedState s0 = sc.initial_state();
    HamiltonianState hs;
    hs.rho = s0.rho;
    hs.u.resize(s0.rho.size());
    for (int j = 0; j < s0.n_cells(); ++j)
        hs.u[static_cast<std::size_t>(j)] =
            s0.mom[static_cast<std::size_t>(j)] / s0.rho[static_cast<std::size_t>(j)];
    hs.dx = s0.dx();

    HamiltonianSolver solver(sc.model, opt.newton_tol);
    solver.set_state(hs);

    HamiltonianRunResult out;
    const long total = std::lround(std::ceil(sc.end_time / opt.dt));
    const int stride = opt.diag_stride > 0 ? opt.diag_stride : std::max(1L, total / 2000);
    std::vector<double> snaps = sc.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;
    int snap_index = 0;

    auto record = [&]() {
        const HamiltonianState& s = solver.state();
        out.times.push_back(s.time);
        out.hamiltonian.push_back(discrete_hamiltonian(sc.model, s));
        out.momentum.push_back(hamiltonian_momentum(s));
        out.zone_width.push_back(dispersive_shock_metrics(s.rho, s.dx).zone_width);
    };
    record();
    long step = 0;
    while (solver.state().time < sc.end_time - 1e-12 * std::max(sc.end_time, 1.0)) {
        double step_dt = std::min(opt.dt, sc.end_time - solver.state().time);
        if (next_snap < snaps.size())
            step_dt = std::min(step_dt, snaps[next_snap] - solver.state().time);
        solver.step_be(step_dt);
        ++step;
        if (step % stride == 0) record();
        if (next_snap < snaps.size() &&
            solver.state().time >=
                snaps[next_snap] - 1e-12 * std::max(snaps[next_snap], 1.0)) {
            const HamiltonianState& s = solver.state();
            if (writing) {
                CsvWriter csv(opt.out_dir + "/" + opt.prefix + "_snapshot_" +
                                  std::to_string(snap_index) + ".csv",
                              {"x", "h", "u"});
                for (int j = 0; j < s.n(); ++j)
                    csv.row({sc.x0 + (j + 0.5) * s.dx, s.rho[static_cast<std::size_t>(j)],
                             s.u[static_cast<std::size_t>(j)]});
            }
            if (opt.on_snapshot) opt.on_snapshot(s.time, s);
            out.snapshot_times.push_back(s.time);
            ++next_snap;
            ++snap_index;
        }
    }
    record();
    out.final_state = solver.state();
    if (writing) {
        CsvWriter diag(opt.out_dir + "/" + opt.prefix + "_diagnostics.csv",
                       {"t", "H", "momentum", "zone_width"});
        for (std::size_t i = 0; i < out.times.size(); ++i)
            diag.row({out.times[i], out.hamiltonian[i], out.momentum[i],
                      out.zone_width[i]});
    }
    return out;
}

}  // namespace ek
