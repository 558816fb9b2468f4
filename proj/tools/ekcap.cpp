// Command-line driver: Fourier stability scans, CFL tables, simulation runs,
// Hamiltonian runs and the nondimensional-number calculator.

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ekcore/config.hpp"
#include "ekcore/csv.hpp"
#include "ekcore/run.hpp"
#include "ekcore/scenario.hpp"
#include "ekcore/solver.hpp"
#include "ekcore/vn_stability.hpp"

namespace {

using namespace ek;

SpatialKind spatial_from(const std::string& s) {
    if (s == "lf") return SpatialKind::lax_friedrichs;
    if (s == "mlf") return SpatialKind::modified_lf;
    if (s == "rusanov") return SpatialKind::rusanov;
    if (s == "godunov") return SpatialKind::godunov_roe;
    if (s == "centered") return SpatialKind::centered;
    if (s == "muscl-lf") return SpatialKind::muscl_lf;
    if (s == "muscl-rusanov") return SpatialKind::muscl_rusanov;
    if (s == "muscl-centered") return SpatialKind::muscl_centered;
    throw CLI::ValidationError("unknown scheme: " + s);
}

TemporalScheme temporal_from(const std::string& s, double theta) {
    TemporalScheme t;
    if (s == "fe") t.kind = TemporalKind::forward_euler;
    else if (s == "be") t.kind = TemporalKind::backward_euler;
    else if (s == "cn") t.kind = TemporalKind::crank_nicolson;
    else if (s == "rk2") t.kind = TemporalKind::rk2;
    else if (s == "theta") { t.kind = TemporalKind::theta; t.theta = theta; }
    else throw CLI::ValidationError("unknown temporal scheme: " + s);
    return t;
}

int cmd_stability(const LinearizedSetup& setup, const std::string& scheme,
                  const std::string& temporal, double theta, double dx, double dt,
                  int n_xi, const std::string& out_dir) {
    SpatialScheme spatial{spatial_from(scheme)};
    const TemporalScheme ts = temporal_from(temporal, theta);

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        CsvWriter csv(out_dir + "/stability_scan.csv", {"xi", "G_plus", "G_minus", "stable"});
        const double xi_max = 2.0 / dx;
        for (int k = 0; k < n_xi; ++k) {
            const double xi = -xi_max + 2.0 * xi_max * k / (n_xi - 1);
            const Mat2c m = scheme_symbol(setup, spatial, xi, dx, dt);
            const auto [l1, l2] = eigenvalues(m);
            const double g1 = amplification(ts, l1, xi, dt);
            const double g2 = amplification(ts, l2, xi, dt);
            csv.row({xi, g1, g2,
                     (std::max(g1, g2) <= 1.0 + kGrowthTol) ? 1.0 : 0.0});
        }
    }
    const StabilityVerdict v = stability_scan(setup, spatial, ts, dx, dt, n_xi);
    std::printf("scheme=%s temporal=%s dx=%g dt=%g: %s  max|G|=%.12g at xi=%.6g  "
                "(necessary condition %s, %d points)\n",
                scheme.c_str(), temporal.c_str(), dx, dt,
                v.stable ? "STABLE" : "UNSTABLE", v.max_amplification, v.worst_xi,
                v.necessary_condition_ok ? "holds" : "fails", v.scanned_points);
    return 0;
}

int cmd_cfl(const LinearizedSetup& setup, double dx, double theta,
            const std::string& out_dir) {
    struct Row {
        const char* name;
        SpatialKind spatial;
        BoundKind bound;
        TemporalScheme temporal;
    };
    const TemporalScheme theta_s =
        theta == 0.0 ? TemporalScheme{TemporalKind::forward_euler, 0.0}
                     : TemporalScheme{TemporalKind::theta, theta};
    const TemporalScheme rk2{TemporalKind::rk2, 0.0};
    const std::vector<Row> rows = {
        {"lf", SpatialKind::lax_friedrichs, BoundKind::lax_friedrichs, theta_s},
        {"mlf", SpatialKind::modified_lf, BoundKind::modified_lf, theta_s},
        {"rusanov", SpatialKind::rusanov, BoundKind::rusanov, theta_s},
        {"godunov", SpatialKind::godunov_roe, BoundKind::godunov_roe, theta_s},
        {"muscl-lf", SpatialKind::muscl_lf, BoundKind::muscl_lf, rk2},
        {"muscl-rusanov", SpatialKind::muscl_rusanov, BoundKind::muscl_rusanov, rk2},
    };
    std::printf("%-14s %14s %14s %8s\n", "scheme", "closed-form", "bisection", "ratio");
    std::vector<std::vector<double>> table;
    for (const auto& row : rows) {
        const double bound = cfl_bound_closed_form(setup, row.bound, theta, dx);
        const CriticalDt crit =
            critical_dt_bisection(setup, SpatialScheme{row.spatial}, row.temporal, dx);
        const double ratio = bound > 0.0 && crit.found ? crit.dt / bound : 0.0;
        std::printf("%-14s %14.6g %14.6g %8.3f%s\n", row.name, bound, crit.dt, ratio,
                    crit.stable_at_max ? "  (stable up to bracket top)" : "");
        table.push_back({bound, crit.dt, ratio});
    }
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        CsvWriter csv(out_dir + "/cfl_table.csv", {"closed_form", "bisection", "ratio"});
        for (const auto& r : table) csv.row(r);
    }
    return 0;
}

int cmd_nondim(double re, double nu, double g, double theta_deg, double rho,
               double sigma, double lambda) {
    const NondimensionalSet nd =
        liu_gollub_nondimensionalize(re, nu, g, theta_deg, rho, sigma, lambda);
    std::printf("h_N        = %.6g m\n", nd.h_n);
    std::printf("u_N        = %.6g m/s (consistent with T_N, We)\n", nd.u_n);
    std::printf("u_N(nuRe/h)= %.6g m/s%s\n", nd.u_n_formula,
                nd.u_n_discrepant ? "  [differs from the consistent value]" : "");
    std::printf("T_N        = %.6g s\n", nd.t_n);
    std::printf("F^2        = %.6g\n", nd.froude_sq);
    std::printf("We         = %.6g\n", nd.weber);
    std::printf("epsilon    = %.6g\n", nd.epsilon);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D Euler-Korteweg / capillary shallow-water laboratory"};
    app.require_subcommand(1);

    // ---- stability ----
    auto* st = app.add_subcommand("stability", "Fourier stability scan of a linearized scheme");
    double st_rho = 1.0, st_u = 0.5, st_c = 1.0, st_sigma = 1.0;
    double st_dx = 1e-2, st_dt = 1e-4, st_theta = 0.0;
    int st_nxi = 2049;
    std::string st_scheme = "lf", st_temporal = "fe", st_out;
    st->add_option("--rho-bar", st_rho, "reference density");
    st->add_option("--u-bar", st_u, "reference velocity");
    st->add_option("--c-bar", st_c, "sound speed");
    st->add_option("--sigma-bar", st_sigma, "capillarity sigma = rho*kappa");
    st->add_option("--scheme", st_scheme,
                   "lf|mlf|rusanov|godunov|centered|muscl-lf|muscl-rusanov|muscl-centered");
    st->add_option("--temporal", st_temporal, "fe|be|cn|theta|rk2");
    st->add_option("--theta", st_theta, "theta for the theta scheme");
    st->add_option("--dx", st_dx, "grid spacing");
    st->add_option("--dt", st_dt, "time step");
    st->add_option("--n-xi", st_nxi, "scan resolution");
    st->add_option("--out-dir", st_out, "directory for the scan CSV");

    // ---- cfl ----
    auto* cf = app.add_subcommand("cfl", "closed-form vs bisection CFL table");
    double cf_rho = 1.0, cf_u = 0.5, cf_c = 1.0, cf_sigma = 1.0, cf_dx = 1e-2,
           cf_theta = 0.0;
    std::string cf_out;
    cf->add_option("--rho-bar", cf_rho, "reference density");
    cf->add_option("--u-bar", cf_u, "reference velocity");
    cf->add_option("--c-bar", cf_c, "sound speed");
    cf->add_option("--sigma-bar", cf_sigma, "capillarity sigma = rho*kappa");
    cf->add_option("--dx", cf_dx, "grid spacing");
    cf->add_option("--theta", cf_theta, "theta of the time discretization");
    cf->add_option("--out-dir", cf_out, "directory for the CSV table");

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "run a scenario");
    std::string sim_config, sim_scenario = "ktest", sim_out = "out", sim_flux,
                sim_temporal;
    double sim_dx = 0.0, sim_dt = 0.0, sim_end = 0.0;
    bool sim_enforce_w = false, sim_original = false;
    unsigned sim_seed = 0;
    sim->add_option("--config", sim_config, "scenario config file");
    sim->add_option("--scenario", sim_scenario, "ktest|liu_gollub (when no config)");
    sim->add_option("--out-dir", sim_out, "output directory");
    sim->add_option("--dx", sim_dx, "override grid spacing");
    sim->add_option("--dt", sim_dt, "override time step");
    sim->add_option("--end-time", sim_end, "override end time");
    sim->add_option("--flux", sim_flux, "lf|mlf|rusanov|hll|econs");
    sim->add_option("--temporal", sim_temporal, "fe|be|rk2");
    sim->add_flag("--enforce-w", sim_enforce_w, "re-impose the w relation each step");
    sim->add_flag("--original-formulation", sim_original,
                  "height-formulation baseline (comparison only)");
    sim->add_option("--seed", sim_seed, "seed for randomized sweeps (reserved)");

    // ---- hamiltonian ----
    auto* ham = app.add_subcommand("hamiltonian", "structure-preserving run of a scenario");
    std::string ham_config, ham_scenario = "ktest", ham_out = "out_ham";
    double ham_dx = 5e-4, ham_dt = 2.5e-5, ham_end = 0.66;
    ham->add_option("--config", ham_config, "scenario config file");
    ham->add_option("--scenario", ham_scenario, "ktest (periodic scenarios only)");
    ham->add_option("--out-dir", ham_out, "output directory");
    ham->add_option("--dx", ham_dx, "grid spacing");
    ham->add_option("--dt", ham_dt, "time step");
    ham->add_option("--end-time", ham_end, "end time");

    // ---- nondim ----
    auto* nd = app.add_subcommand("nondim", "inclined-film nondimensional numbers");
    double nd_re = 29.0, nd_nu = 6.28e-6, nd_g = 9.8, nd_theta = 6.4, nd_rho = 1134.0,
           nd_sigma = 6.7e-2, nd_lambda = 0.01;
    nd->add_option("--re", nd_re, "Reynolds number");
    nd->add_option("--nu", nd_nu, "kinematic viscosity (m^2/s)");
    nd->add_option("--g", nd_g, "gravity (m/s^2)");
    nd->add_option("--theta-deg", nd_theta, "inclination (degrees)");
    nd->add_option("--rho", nd_rho, "fluid density (kg/m^3)");
    nd->add_option("--sigma", nd_sigma, "surface tension (N/m)");
    nd->add_option("--lambda", nd_lambda, "ripple wavelength scale (m)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (st->parsed()) {
            LinearizedSetup setup{st_rho, st_u, st_c, st_sigma};
            return cmd_stability(setup, st_scheme, st_temporal, st_theta, st_dx, st_dt,
                                 st_nxi, st_out);
        }
        if (cf->parsed()) {
            LinearizedSetup setup{cf_rho, cf_u, cf_c, cf_sigma};
            return cmd_cfl(setup, cf_dx, cf_theta, cf_out);
        }
        if (nd->parsed()) {
            return cmd_nondim(nd_re, nd_nu, nd_g, nd_theta, nd_rho, nd_sigma, nd_lambda);
        }
        if (sim->parsed()) {
            Scenario sc;
            if (!sim_config.empty()) {
                sc = scenario_from_config(read_config_file(sim_config));
            } else if (sim_scenario == "ktest") {
                sc = ktest_scenario(sim_dx > 0.0 ? sim_dx : 2.5e-4);
            } else if (sim_scenario == "liu_gollub") {
                const NondimensionalSet ndset = liu_gollub_nondimensionalize(
                    29.0, 6.28e-6, 9.8, 6.4, 1134.0, 6.7e-2, 0.01);
                sc = liu_gollub_scenario(ndset, 1.5, 2.0, sim_dx > 0.0 ? sim_dx : 0.05);
            } else {
                std::fprintf(stderr, "unknown scenario: %s\n", sim_scenario.c_str());
                return 1;
            }
            if (sim_dt > 0.0) {
                sc.dt_rule = DtRule::fixed;
                sc.dt_value = sim_dt;
            }
            if (sim_end > 0.0) {
                sc.end_time = sim_end;
                std::erase_if(sc.snapshot_times,
                              [&](double t) { return t > sim_end; });
            }
            if (!sim_flux.empty()) {
                if (sim_flux == "lf") sc.solver.flux.kind = FluxKind::lax_friedrichs;
                else if (sim_flux == "mlf") sc.solver.flux.kind = FluxKind::modified_lf;
                else if (sim_flux == "rusanov") sc.solver.flux.kind = FluxKind::rusanov;
                else if (sim_flux == "hll") sc.solver.flux.kind = FluxKind::hll;
                else if (sim_flux == "econs")
                    sc.solver.flux.kind = FluxKind::entropy_conservative;
                else {
                    std::fprintf(stderr, "unknown flux: %s\n", sim_flux.c_str());
                    return 1;
                }
            }
            if (!sim_temporal.empty()) {
                if (sim_temporal == "fe") sc.solver.temporal = Temporal::forward_euler;
                else if (sim_temporal == "be") sc.solver.temporal = Temporal::backward_euler;
                else if (sim_temporal == "rk2") sc.solver.temporal = Temporal::rk2;
                else {
                    std::fprintf(stderr, "unknown temporal: %s\n", sim_temporal.c_str());
                    return 1;
                }
                if (sc.solver.temporal != Temporal::rk2) sc.solver.flux.muscl = false;
            }
            sc.solver.enforce_w = sim_enforce_w;
            RunOptions opt;
            opt.out_dir = sim_out;
            opt.prefix = sc.name;
            opt.original_formulation = sim_original;
            const RunResult res = run_simulation(sc, opt);
            std::printf("%s: t=%g, %zu diagnostic samples, %zu snapshots -> %s\n",
                        sc.name.c_str(), res.final_state.time, res.diag.times.size(),
                        res.snapshot_times.size(), sim_out.c_str());
            // Also drop the resolved config for reproducibility.
            write_config_file(sim_out + "/" + sc.name + "_resolved.cfg",
                              scenario_to_config(sc));
            return 0;
        }
        if (ham->parsed()) {
            Scenario sc;
            if (!ham_config.empty()) sc = scenario_from_config(read_config_file(ham_config));
            else if (ham_scenario == "ktest") sc = ktest_scenario(ham_dx);
            else {
                std::fprintf(stderr, "unknown scenario: %s\n", ham_scenario.c_str());
                return 1;
            }
            sc.end_time = ham_end;
            if (sc.snapshot_times.empty() || !ham_config.empty()) {
                sc.snapshot_times.clear();
                for (int k = 1; k <= 6; ++k) sc.snapshot_times.push_back(ham_end * k / 6.0);
            }
            HamiltonianRunOptions opt;
            opt.out_dir = ham_out;
            opt.prefix = sc.name;
            opt.dt = ham_dt;
            const HamiltonianRunResult res = run_hamiltonian(sc, opt);
            std::printf("%s hamiltonian: t=%g, H drift %.3g, final zone width %g\n",
                        sc.name.c_str(), res.final_state.time,
                        (res.hamiltonian.back() - res.hamiltonian.front()) /
                            res.hamiltonian.front(),
                        res.zone_width.back());
            return 0;
        }
    } catch (const PositivityError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const NewtonError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
