#include "ekcore/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ek {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw std::runtime_error("bad numeric value for " + what + ": '" + s + "'");
    }
}

}  // namespace

const std::string* ConfigFile::find(const std::string& section,
                                    const std::string& key) const {
    for (const auto& [name, entries] : sections) {
        if (name != section) continue;
        for (const auto& [k, v] : entries)
            if (k == key) return &v;
    }
    return nullptr;
}

void ConfigFile::set(const std::string& section, const std::string& key,
                     const std::string& value) {
    for (auto& [name, entries] : sections) {
        if (name != section) continue;
        for (auto& [k, v] : entries) {
            if (k == key) {
                v = value;
                return;
            }
        }
        entries.emplace_back(key, value);
        return;
    }
    sections.push_back({section, {{key, value}}});
}

ConfigFile parse_config(const std::string& text) {
    ConfigFile out;
    std::istringstream in(text);
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": unterminated section header");
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty())
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": empty section name");
            bool exists = false;
            for (auto& [name, entries] : out.sections)
                if (name == current) exists = true;
            if (!exists) out.sections.push_back({current, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": empty key");
        if (current.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": key outside any section");
        out.set(current, key, value);
    }
    return out;
}

std::string serialize_config(const ConfigFile& config) {
    std::string out;
    bool first = true;
    for (const auto& [name, entries] : config.sections) {
        if (!first) out += "\n";
        first = false;
        out += "[" + name + "]\n";
        for (const auto& [k, v] : entries) out += k + " = " + v + "\n";
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string flux_kind_name(FluxKind k) {
    switch (k) {
        case FluxKind::lax_friedrichs: return "lf";
        case FluxKind::modified_lf: return "mlf";
        case FluxKind::rusanov: return "rusanov";
        case FluxKind::hll: return "hll";
        case FluxKind::entropy_conservative: return "econs";
    }
    return "rusanov";
}

FluxKind flux_kind_from(const std::string& s) {
    if (s == "lf") return FluxKind::lax_friedrichs;
    if (s == "mlf") return FluxKind::modified_lf;
    if (s == "rusanov") return FluxKind::rusanov;
    if (s == "hll") return FluxKind::hll;
    if (s == "econs") return FluxKind::entropy_conservative;
    throw std::runtime_error("unknown flux kind: " + s);
}

std::string temporal_name(Temporal t) {
    switch (t) {
        case Temporal::forward_euler: return "fe";
        case Temporal::backward_euler: return "be";
        case Temporal::rk2: return "rk2";
    }
    return "fe";
}

Temporal temporal_from(const std::string& s) {
    if (s == "fe") return Temporal::forward_euler;
    if (s == "be") return Temporal::backward_euler;
    if (s == "rk2") return Temporal::rk2;
    throw std::runtime_error("unknown temporal scheme: " + s);
}

}  // namespace

ConfigFile scenario_to_config(const Scenario& sc) {
    ConfigFile c;
    c.set("scenario", "name", sc.name);
    c.set("scenario", "x0", format_double(sc.x0));
    c.set("scenario", "length", format_double(sc.length));
    c.set("scenario", "n_cells", std::to_string(sc.n_cells));
    c.set("scenario", "end_time", format_double(sc.end_time));
    c.set("scenario", "bc",
          sc.bc == Boundary::periodic ? "periodic" : "inlet_outlet");
    {
        std::string times;
        for (std::size_t i = 0; i < sc.snapshot_times.size(); ++i) {
            if (i) times += ",";
            times += format_double(sc.snapshot_times[i]);
        }
        if (!times.empty()) c.set("scenario", "snapshot_times", times);
    }

    c.set("model", "kind", sc.model_kind);
    if (sc.model_kind == "shallow_water") {
        c.set("model", "gravity", format_double(sc.gravity));
        c.set("model", "kappa", format_double(sc.kappa));
    } else {
        c.set("model", "froude_sq", format_double(sc.froude_sq));
        c.set("model", "kappa", format_double(sc.kappa));
    }

    c.set("flux", "kind", flux_kind_name(sc.solver.flux.kind));
    c.set("flux", "extra_viscosity", format_double(sc.solver.flux.extra_viscosity));
    c.set("flux", "quadrature_order", std::to_string(sc.solver.flux.quadrature_order));
    c.set("flux", "muscl", sc.solver.flux.muscl ? "on" : "off");
    c.set("flux", "limiter",
          sc.solver.flux.limiter == Limiter::minmod ? "minmod" : "none");

    c.set("time", "scheme", temporal_name(sc.solver.temporal));
    switch (sc.dt_rule) {
        case DtRule::fixed: c.set("time", "dt", format_double(sc.dt_value)); break;
        case DtRule::parabolic_120: c.set("time", "dt", "120dx2"); break;
        case DtRule::auto_entropy_cfl: c.set("time", "dt", "auto"); break;
    }
    c.set("time", "newton_tol", format_double(sc.solver.newton_tol));
    c.set("time", "newton_max_iter", std::to_string(sc.solver.newton_max_iter));
    c.set("time", "enforce_w", sc.solver.enforce_w ? "on" : "off");
    c.set("time", "entropy_guard", sc.solver.entropy_guard ? "on" : "off");

    if (sc.solver.sources.kind == SourceSpec::Kind::liu_gollub) {
        c.set("sources", "kind", "liu_gollub");
        c.set("sources", "epsilon", format_double(sc.solver.sources.epsilon));
        c.set("sources", "reynolds", format_double(sc.solver.sources.reynolds));
        c.set("sources", "weber", format_double(sc.solver.sources.weber));
        c.set("sources", "froude_sq", format_double(sc.solver.sources.froude_sq));
        c.set("sources", "inlet_freq", format_double(sc.solver.sources.inlet_freq));
        c.set("sources", "inlet_amp", format_double(sc.solver.sources.inlet_amp));
        c.set("sources", "time_scale", format_double(sc.solver.inlet.time_scale));
    }
    return c;
}

Scenario scenario_from_config(const ConfigFile& c) {
    Scenario sc;
    auto need = [&](const std::string& s, const std::string& k) -> const std::string& {
        const std::string* v = c.find(s, k);
        if (!v) throw std::runtime_error("missing config key [" + s + "] " + k);
        return *v;
    };
    auto maybe = [&](const std::string& s, const std::string& k) { return c.find(s, k); };

    sc.name = need("scenario", "name");
    sc.x0 = to_double(need("scenario", "x0"), "x0");
    sc.length = to_double(need("scenario", "length"), "length");
    sc.n_cells = static_cast<int>(to_double(need("scenario", "n_cells"), "n_cells"));
    sc.end_time = to_double(need("scenario", "end_time"), "end_time");
    sc.bc = need("scenario", "bc") == "periodic" ? Boundary::periodic
                                                 : Boundary::inlet_outlet;
    if (const std::string* times = maybe("scenario", "snapshot_times")) {
        std::istringstream in(*times);
        std::string tok;
        while (std::getline(in, tok, ','))
            sc.snapshot_times.push_back(to_double(tok, "snapshot_times"));
    }

    sc.model_kind = need("model", "kind");
    sc.kappa = to_double(need("model", "kappa"), "kappa");
    if (sc.model_kind == "shallow_water") {
        sc.gravity = to_double(need("model", "gravity"), "gravity");
        sc.model = shallow_water_model(sc.gravity, sc.kappa);
        sc.model.form = ModelForm::shallow_water;
        sc.model.param_g = sc.gravity;
        sc.model.param_kappa = sc.kappa;
    } else if (sc.model_kind == "liu_gollub") {
        sc.froude_sq = to_double(need("model", "froude_sq"), "froude_sq");
        sc.model = liu_gollub_model(sc.froude_sq, sc.kappa);
        sc.model.form = ModelForm::liu_gollub;
        sc.model.param_froude_sq = sc.froude_sq;
        sc.model.param_kappa = sc.kappa;
    } else {
        throw std::runtime_error("unknown model kind: " + sc.model_kind);
    }

    sc.solver.flux.kind = flux_kind_from(need("flux", "kind"));
    sc.solver.flux.extra_viscosity =
        to_double(need("flux", "extra_viscosity"), "extra_viscosity");
    sc.solver.flux.quadrature_order =
        static_cast<int>(to_double(need("flux", "quadrature_order"), "quadrature_order"));
    sc.solver.flux.muscl = need("flux", "muscl") == "on";
    sc.solver.flux.limiter =
        need("flux", "limiter") == "minmod" ? Limiter::minmod : Limiter::none;

    sc.solver.temporal = temporal_from(need("time", "scheme"));
    {
        const std::string dt = need("time", "dt");
        if (dt == "120dx2") {
            sc.dt_rule = DtRule::parabolic_120;
        } else if (dt == "auto") {
            sc.dt_rule = DtRule::auto_entropy_cfl;
        } else {
            sc.dt_rule = DtRule::fixed;
            sc.dt_value = to_double(dt, "dt");
        }
    }
    sc.solver.newton_tol = to_double(need("time", "newton_tol"), "newton_tol");
    sc.solver.newton_max_iter =
        static_cast<int>(to_double(need("time", "newton_max_iter"), "newton_max_iter"));
    sc.solver.enforce_w = need("time", "enforce_w") == "on";
    sc.solver.entropy_guard = need("time", "entropy_guard") == "on";

    if (const std::string* kind = maybe("sources", "kind"); kind && *kind == "liu_gollub") {
        sc.solver.sources.kind = SourceSpec::Kind::liu_gollub;
        sc.solver.sources.epsilon = to_double(need("sources", "epsilon"), "epsilon");
        sc.solver.sources.reynolds = to_double(need("sources", "reynolds"), "reynolds");
        sc.solver.sources.weber = to_double(need("sources", "weber"), "weber");
        sc.solver.sources.froude_sq = to_double(need("sources", "froude_sq"), "froude_sq");
        sc.solver.sources.inlet_freq = to_double(need("sources", "inlet_freq"), "inlet_freq");
        sc.solver.sources.inlet_amp = to_double(need("sources", "inlet_amp"), "inlet_amp");
        sc.solver.inlet.amplitude = sc.solver.sources.inlet_amp;
        sc.solver.inlet.freq_hz = sc.solver.sources.inlet_freq;
        sc.solver.inlet.time_scale = to_double(need("sources", "time_scale"), "time_scale");
    }
    return sc;
}

ConfigFile read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void write_config_file(const std::string& path, const ConfigFile& config) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write config file: " + path);
    out << serialize_config(config);
}

}  // namespace ek
