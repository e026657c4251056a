#include "crlhsim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace crlhsim::config {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw ConfigError("config." + path + ": " + why);
}

void check_keys(const Json& j, const std::string& path,
                const std::set<std::string>& allowed) {
    if (!j.is_object()) fail(path, "must be an object");
    for (const auto& [k, v] : j.items()) {
        if (!allowed.count(k)) fail(path + "." + k, "unknown key");
    }
}

double get_num(const Json& j, const std::string& path, const std::string& key,
               double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) fail(path + "." + key, "must be a number");
    return j[key].get<double>();
}

int get_int(const Json& j, const std::string& path, const std::string& key,
            int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) fail(path + "." + key, "must be an integer");
    return j[key].get<int>();
}

std::string get_str(const Json& j, const std::string& path, const std::string& key,
                    const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) fail(path + "." + key, "must be a string");
    return j[key].get<std::string>();
}

std::optional<double> get_opt(const Json& j, const std::string& path,
                              const std::string& key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_number()) fail(path + "." + key, "must be a number or null");
    return j[key].get<double>();
}

}  // namespace

void SimulationConfig::validate() const {
    cell_params().validate();
    if (coupler.c_m_f < 0.0) fail("coupler.c_m_f", "must be non-negative");
    if (coupler.n_c < 1) fail("coupler.n_c", "must be at least 1");
    if (std::abs(coupler.delta_l_r_h) >= cell.l_r_h) {
        fail("coupler.delta_l_r_h", "detuning must be smaller than L_R");
    }
    if (!(squid.beta_l > 0.0 && squid.beta_l < 1.0)) {
        fail("squid.beta_l", "must lie in (0, 1)");
    }
    squid_params().validate(cell.l_r_h);
    if (!(squid.f_m_hz > 0.0)) fail("squid.f_m_hz", "must be positive");
    if (!(device.f_op_hz > 0.0)) fail("device.f_op_hz", "must be positive");
    // Slow-modulation regime required by the quasi-static treatment.
    if (!(omega_m() / omega_op() < 0.004)) {
        fail("squid.f_m_hz", "modulation must satisfy Omega_m/omega_op < 0.004");
    }
    if (device.termination != "uncoupled_z0" && device.termination != "fixed") {
        fail("device.termination", "must be \"uncoupled_z0\" or \"fixed\"");
    }
    if (device.static_state != "off" && device.static_state != "on") {
        fail("device.static_state", "must be \"off\" or \"on\"");
    }
    if (!(device.fixed_z_ohm > 0.0)) fail("device.fixed_z_ohm", "must be positive");
    if (device.theta0_cells < 0.0) fail("device.theta0_cells", "must be non-negative");
    if (!(sweep.f_min_hz < sweep.f_max_hz)) {
        fail("sweep", "f_min_hz must be smaller than f_max_hz");
    }
    if (sweep.points < 2) fail("sweep.points", "need at least 2 points");
    if (output.format != "csv") fail("output.format", "only \"csv\" is supported");
}

Json SimulationConfig::to_json() const {
    Json j;
    j["cell"] = {{"l_r_h", cell.l_r_h},
                 {"c_r_f", cell.c_r_f},
                 {"l_l_h", cell.l_l_h},
                 {"c_l_f", cell.c_l_f},
                 {"pitch_m", cell.pitch_m}};
    j["coupler"] = {{"c_m_f", coupler.c_m_f},
                    {"l_m_off_h", coupler.l_m_off_h},
                    {"l_m_on_h", coupler.l_m_on_h},
                    {"delta_l_r_h", coupler.delta_l_r_h},
                    {"n_c", coupler.n_c}};
    j["squid"] = {{"l_s_h", squid.l_s_h},
                  {"l_p_h", squid.l_p_h},
                  {"l_b_h", squid.l_b_h},
                  {"l_dir_h", squid.l_dir_h},
                  {"beta_l", squid.beta_l},
                  {"f_m_hz", squid.f_m_hz}};
    j["device"] = {{"phi_1_rad", device.phi_1_rad},
                   {"delta_theta_rad", device.delta_theta_rad},
                   {"phi_2_rad", device.phi_2_rad},
                   {"f_op_hz", device.f_op_hz},
                   {"theta0_cells", device.theta0_cells},
                   {"termination", device.termination},
                   {"fixed_z_ohm", device.fixed_z_ohm},
                   {"static_state", device.static_state},
                   {"cells_up", device.cells_up ? Json(*device.cells_up) : Json(nullptr)},
                   {"cells_down",
                    device.cells_down ? Json(*device.cells_down) : Json(nullptr)}};
    j["sweep"] = {{"f_min_hz", sweep.f_min_hz},
                  {"f_max_hz", sweep.f_max_hz},
                  {"points", sweep.points}};
    j["output"] = {{"directory", output.directory}, {"format", output.format}};
    return j;
}

SimulationConfig SimulationConfig::from_json(const Json& root) {
    // A run manifest embeds the resolved config under "config"; accept it
    // directly so any output is reproducible from its manifest alone.
    const Json& j = (root.is_object() && root.contains("config") &&
                     root.contains("tool"))
                        ? root["config"]
                        : root;

    check_keys(j, "", {"cell", "coupler", "squid", "device", "sweep", "output"});
    SimulationConfig c;

    if (j.contains("cell")) {
        const auto& b = j["cell"];
        check_keys(b, "cell", {"l_r_h", "c_r_f", "l_l_h", "c_l_f", "pitch_m"});
        c.cell.l_r_h = get_num(b, "cell", "l_r_h", c.cell.l_r_h);
        c.cell.c_r_f = get_num(b, "cell", "c_r_f", c.cell.c_r_f);
        c.cell.l_l_h = get_num(b, "cell", "l_l_h", c.cell.l_l_h);
        c.cell.c_l_f = get_num(b, "cell", "c_l_f", c.cell.c_l_f);
        c.cell.pitch_m = get_num(b, "cell", "pitch_m", c.cell.pitch_m);
    }
    if (j.contains("coupler")) {
        const auto& b = j["coupler"];
        check_keys(b, "coupler", {"c_m_f", "l_m_off_h", "l_m_on_h", "delta_l_r_h", "n_c"});
        c.coupler.c_m_f = get_num(b, "coupler", "c_m_f", c.coupler.c_m_f);
        c.coupler.l_m_off_h = get_num(b, "coupler", "l_m_off_h", c.coupler.l_m_off_h);
        c.coupler.l_m_on_h = get_num(b, "coupler", "l_m_on_h", c.coupler.l_m_on_h);
        c.coupler.delta_l_r_h = get_num(b, "coupler", "delta_l_r_h", c.coupler.delta_l_r_h);
        c.coupler.n_c = get_int(b, "coupler", "n_c", c.coupler.n_c);
    }
    if (j.contains("squid")) {
        const auto& b = j["squid"];
        check_keys(b, "squid", {"l_s_h", "l_p_h", "l_b_h", "l_dir_h", "beta_l", "f_m_hz"});
        c.squid.l_s_h = get_num(b, "squid", "l_s_h", c.squid.l_s_h);
        c.squid.l_p_h = get_num(b, "squid", "l_p_h", c.squid.l_p_h);
        c.squid.l_b_h = get_num(b, "squid", "l_b_h", c.squid.l_b_h);
        c.squid.l_dir_h = get_num(b, "squid", "l_dir_h", c.squid.l_dir_h);
        c.squid.beta_l = get_num(b, "squid", "beta_l", c.squid.beta_l);
        c.squid.f_m_hz = get_num(b, "squid", "f_m_hz", c.squid.f_m_hz);
    }
    if (j.contains("device")) {
        const auto& b = j["device"];
        check_keys(b, "device",
                   {"phi_1_rad", "delta_theta_rad", "phi_2_rad", "f_op_hz",
                    "theta0_cells", "termination", "fixed_z_ohm", "static_state",
                    "cells_up", "cells_down"});
        c.device.phi_1_rad = get_num(b, "device", "phi_1_rad", c.device.phi_1_rad);
        c.device.delta_theta_rad =
            get_num(b, "device", "delta_theta_rad", c.device.delta_theta_rad);
        c.device.phi_2_rad = get_num(b, "device", "phi_2_rad", c.device.phi_2_rad);
        c.device.f_op_hz = get_num(b, "device", "f_op_hz", c.device.f_op_hz);
        c.device.theta0_cells = get_num(b, "device", "theta0_cells", c.device.theta0_cells);
        c.device.termination = get_str(b, "device", "termination", c.device.termination);
        c.device.fixed_z_ohm = get_num(b, "device", "fixed_z_ohm", c.device.fixed_z_ohm);
        c.device.static_state = get_str(b, "device", "static_state", c.device.static_state);
        c.device.cells_up = get_opt(b, "device", "cells_up");
        c.device.cells_down = get_opt(b, "device", "cells_down");
    }
    if (j.contains("sweep")) {
        const auto& b = j["sweep"];
        check_keys(b, "sweep", {"f_min_hz", "f_max_hz", "points"});
        c.sweep.f_min_hz = get_num(b, "sweep", "f_min_hz", c.sweep.f_min_hz);
        c.sweep.f_max_hz = get_num(b, "sweep", "f_max_hz", c.sweep.f_max_hz);
        c.sweep.points = get_int(b, "sweep", "points", c.sweep.points);
    }
    if (j.contains("output")) {
        const auto& b = j["output"];
        check_keys(b, "output", {"directory", "format"});
        c.output.directory = get_str(b, "output", "directory", c.output.directory);
        c.output.format = get_str(b, "output", "format", c.output.format);
    }
    return c;
}

void SimulationConfig::apply_override(const std::string& key_eq_value) {
    const auto eq = key_eq_value.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override '" + key_eq_value + "' must look like path.key=value");
    }
    const std::string path = key_eq_value.substr(0, eq);
    const std::string value = key_eq_value.substr(eq + 1);

    Json parsed;
    try {
        parsed = Json::parse(value);
    } catch (const nlohmann::json::parse_error&) {
        parsed = value;  // bare strings need no quotes on the command line
    }

    Json j = to_json();
    Json* node = &j;
    size_t start = 0;
    std::vector<std::string> parts;
    while (true) {
        const auto dot = path.find('.', start);
        parts.push_back(path.substr(start, dot == std::string::npos ? dot : dot - start));
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->contains(parts[i])) {
            throw ConfigError("override: unknown config path '" + path + "'");
        }
        node = &(*node)[parts[i]];
    }
    if (!node->contains(parts.back())) {
        throw ConfigError("override: unknown config path '" + path + "'");
    }
    (*node)[parts.back()] = parsed;
    *this = from_json(j);
}

crlh::CrlhCellParams SimulationConfig::cell_params() const {
    return {cell.l_r_h, cell.c_r_f, cell.l_l_h, cell.c_l_f, cell.pitch_m, 0.0};
}

coupler::CoupledLineParams SimulationConfig::coupled_params(double l_m) const {
    return coupler::CoupledLineParams::make_symmetric(cell_params(), l_m, coupler.c_m_f);
}

squid::SquidParams SimulationConfig::squid_params() const {
    return {squid.l_s_h, squid.l_p_h, squid.l_b_h, squid.l_dir_h, squid.beta_l};
}

double SimulationConfig::static_l_m() const {
    return device.static_state == "on" ? coupler.l_m_on_h : coupler.l_m_off_h;
}

device::DeviceSpec SimulationConfig::device_spec() const {
    device::DeviceSpec d;
    d.coupled = coupled_params(static_l_m());
    d.n_c = coupler.n_c;
    d.stage2.theta0_cells = device.theta0_cells;
    d.stage2.delta_theta = device.delta_theta_rad;
    d.stage2.cells_up_override = device.cells_up;
    d.stage2.cells_down_override = device.cells_down;
    d.phi1 = device.phi_1_rad;
    d.phi2 = device.phi_2_rad;
    d.omega_m = omega_m();
    d.omega_op = omega_op();
    d.termination = device.termination == "fixed"
                        ? device::Termination::fixed
                        : device::Termination::uncoupled_line_z0;
    d.fixed_z_ohm = device.fixed_z_ohm;
    return d;
}

std::vector<double> SimulationConfig::frequency_grid() const {
    std::vector<double> f(sweep.points);
    for (int i = 0; i < sweep.points; ++i) {
        f[i] = sweep.f_min_hz +
               (sweep.f_max_hz - sweep.f_min_hz) * i / double(sweep.points - 1);
    }
    return f;
}

SimulationConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return SimulationConfig::from_json(j);
}

}  // namespace crlhsim::config
