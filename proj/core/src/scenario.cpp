#include "ekcore/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace ek {

ConservedState Scenario::initial_state() const {
    ConservedState s;
    s.x0 = x0;
    s.length = length;
    s.bc = bc;
    s.time = 0.0;
    const int n = n_cells;
    s.rho.resize(static_cast<std::size_t>(n));
    s.mom.resize(static_cast<std::size_t>(n));
    s.srw.resize(static_cast<std::size_t>(n));
    if (name == "ktest") {
        const double h_ref = 1e-3;
        for (int j = 0; j < n; ++j) {
            const double x = s.x_center(j);
            const double h =
                h_ref * (1.0 + 0.3 * std::exp(-2000.0 * (x - 0.4) * (x - 0.4)));
            s.rho[static_cast<std::size_t>(j)] = h;
            s.mom[static_cast<std::size_t>(j)] = 0.0;
        }
    } else if (name == "liu_gollub") {
        for (int j = 0; j < n; ++j) {
            s.rho[static_cast<std::size_t>(j)] = 1.0;
            s.mom[static_cast<std::size_t>(j)] = 1.0;
        }
    } else {
        throw std::invalid_argument("unknown scenario: " + name);
    }
    const std::vector<double> w = w_from_density(model, s.rho, s.dx());
    for (int j = 0; j < n; ++j)
        s.srw[static_cast<std::size_t>(j)] =
            s.rho[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
    if (bc == Boundary::inlet_outlet) {
        // Uniform initial film: the gradient (and therefore w) vanishes.
        for (int j = 0; j < n; ++j) s.srw[static_cast<std::size_t>(j)] = 0.0;
    }
    return s;
}

void Scenario::resolve_time_step() {
    const double h = dx();
    double dt = dt_value;
    if (dt_rule == DtRule::parabolic_120) dt = 120.0 * h * h;
    if (dt_rule == DtRule::auto_entropy_cfl) {
        const double nominal = dt_value > 0.0 ? dt_value : 120.0 * h * h;
        solver.flux.extra_viscosity = resolve_p_tilde(solver.flux, h, nominal);
        const ConservedState s0 = initial_state();
        const EntropyCflResult cfl = entropy_cfl_max_dt(model, s0, solver);
        if (!cfl.sufficient_viscosity)
            throw std::runtime_error("entropy CFL: insufficient viscosity at interface " +
                                     std::to_string(cfl.limiting_interface));
        solver.dt = cfl.dt;
        return;
    }
    if (!(dt > 0.0)) throw std::invalid_argument("time step not resolved");
    solver.flux.extra_viscosity = resolve_p_tilde(solver.flux, h, dt);
    solver.dt = dt;
}

Scenario ktest_scenario(double dx, DtRule rule) {
    if (!(dx > 0.0)) throw std::invalid_argument("dx must be positive");
    Scenario sc;
    sc.name = "ktest";
    sc.model_kind = "shallow_water";
    sc.gravity = 9.8;
    sc.kappa = 0.067 / 1134.0;  // 67 dyn/cm over 1.134 g/cm^3, SI
    sc.model = shallow_water_model(sc.gravity, sc.kappa);
    sc.model.form = ModelForm::shallow_water;
    sc.model.param_g = sc.gravity;
    sc.model.param_kappa = sc.kappa;
    sc.x0 = 0.0;
    sc.length = 0.8;
    sc.n_cells = static_cast<int>(std::lround(sc.length / dx));
    sc.end_time = 1.0;
    sc.snapshot_times = {0.2, 0.5, 1.0};
    sc.bc = Boundary::periodic;
    sc.dt_rule = rule;
    sc.dt_value = 120.0 * dx * dx;
    sc.solver.flux.kind = FluxKind::rusanov;
    sc.solver.flux.muscl = true;
    sc.solver.flux.limiter = Limiter::minmod;
    sc.solver.temporal = Temporal::rk2;
    return sc;
}

NondimensionalSet liu_gollub_nondimensionalize(double reynolds, double nu, double g,
                                               double theta_deg, double rho_fluid,
                                               double sigma_tension, double lambda_wave) {
    if (!(reynolds > 0.0 && nu > 0.0 && g > 0.0 && theta_deg > 0.0 && rho_fluid > 0.0 &&
          sigma_tension > 0.0 && lambda_wave > 0.0))
        throw std::invalid_argument("all nondimensionalization inputs must be positive");
    NondimensionalSet nd;
    const double theta = theta_deg * M_PI / 180.0;
    nd.reynolds = reynolds;
    nd.lambda = lambda_wave;
    nd.h_n = std::cbrt(2.0 * reynolds * nu * nu / (g * std::sin(theta)));
    nd.u_n_formula = nu * reynolds / nd.h_n;
    // Nusselt surface balance: u_n = g sin(theta) h_n^2 / (3 nu), identically
    // (2/3) nu Re / h_n. Consistent with the quoted T_N and We.
    nd.u_n = 2.0 / 3.0 * nu * reynolds / nd.h_n;
    nd.u_n_discrepant =
        std::abs(nd.u_n_formula - nd.u_n) > 1e-9 * std::abs(nd.u_n_formula);
    nd.t_n = lambda_wave / nd.u_n;
    nd.froude_sq = 2.0 / 9.0 * reynolds * std::tan(theta);
    nd.weber = rho_fluid * lambda_wave * nd.u_n * nd.u_n / sigma_tension;
    nd.epsilon = nd.h_n / lambda_wave;
    return nd;
}

Scenario liu_gollub_scenario(const NondimensionalSet& nondim, double inlet_freq_hz,
                             double domain_length_m, double dx_nondim) {
    Scenario sc;
    sc.name = "liu_gollub";
    sc.model_kind = "liu_gollub";
    sc.froude_sq = nondim.froude_sq;
    sc.kappa = nondim.epsilon / nondim.weber;
    sc.model = liu_gollub_model(sc.froude_sq, sc.kappa);
    sc.model.form = ModelForm::liu_gollub;
    sc.model.param_froude_sq = sc.froude_sq;
    sc.model.param_kappa = sc.kappa;
    sc.x0 = 0.0;
    sc.length = domain_length_m / nondim.lambda;
    sc.n_cells = static_cast<int>(std::lround(sc.length / dx_nondim));
    sc.end_time = 2000.0;
    sc.bc = Boundary::inlet_outlet;
    sc.dt_rule = DtRule::fixed;

    sc.solver.flux.kind = FluxKind::rusanov;
    sc.solver.flux.muscl = true;
    sc.solver.flux.limiter = Limiter::minmod;
    sc.solver.temporal = Temporal::rk2;
    sc.solver.sources.kind = SourceSpec::Kind::liu_gollub;
    sc.solver.sources.epsilon = nondim.epsilon;
    sc.solver.sources.reynolds = nondim.reynolds;
    sc.solver.sources.weber = nondim.weber;
    sc.solver.sources.froude_sq = nondim.froude_sq;
    sc.solver.sources.inlet_freq = inlet_freq_hz;
    sc.solver.sources.inlet_amp = 0.03;
    sc.solver.inlet.h_mean = 1.0;
    sc.solver.inlet.hu = 1.0;
    sc.solver.inlet.amplitude = 0.03;
    sc.solver.inlet.freq_hz = inlet_freq_hz;
    sc.solver.inlet.time_scale = nondim.t_n;

    // Advective + dispersive stability estimate for the default step.
    const double c = std::sqrt(sc.model.pressure_prime(1.0));
    const double sigma_bar = sc.kappa;
    const double dxh = dx_nondim;
    const double bound = dxh / (1.0 + std::sqrt(c * c + 2.0 * sigma_bar / (dxh * dxh)));
    sc.dt_value = 0.4 * bound;
    return sc;
}

}  // namespace ek
