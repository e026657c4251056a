#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crlhsim/device.hpp"
#include "crlhsim/squid.hpp"

#include "json.hpp"

namespace crlhsim::config {

using Json = nlohmann::ordered_json;

/// Full simulation configuration. Defaults reproduce the reference design:
/// cell {300 pH, 150 fF, 1400 pH, 560 fF}, C_m = 20 fF, L_m Off/On =
/// 0.5/105 pH, n_c = 37, f_op = 6 GHz, phases {0, pi/2, pi/2}.
struct SimulationConfig {
    struct Cell {
        double l_r_h = 300e-12;
        double c_r_f = 150e-15;
        double l_l_h = 1400e-12;
        double c_l_f = 560e-15;
        double pitch_m = 300e-6;
    } cell;

    struct Coupler {
        double c_m_f = 20e-15;
        double l_m_off_h = 0.5e-12;
        double l_m_on_h = 105e-12;
        double delta_l_r_h = 6e-12;  // per-line detuning of the asymmetric model
        int n_c = 37;
    } coupler;

    struct Squid {
        double l_s_h = 200e-12;
        double l_p_h = 100e-12;
        double l_b_h = 40e-12;
        double l_dir_h = 70e-12;
        double beta_l = 0.9;
        double f_m_hz = 20e6;  // modulation frequency Omega_m / 2pi
    } squid;

    struct Device {
        double phi_1_rad = 0.0;
        double delta_theta_rad = pi / 2.0;
        double phi_2_rad = pi / 2.0;
        double f_op_hz = 6e9;
        double theta0_cells = 2.0;
        std::string termination = "uncoupled_z0";  // or "fixed"
        double fixed_z_ohm = 50.0;
        std::string static_state = "off";  // coupler state for static S: "off"/"on"
        std::optional<double> cells_up;    // explicit stage-II overrides
        std::optional<double> cells_down;
    } device;

    struct Sweep {
        double f_min_hz = 5e9;
        double f_max_hz = 7e9;
        int points = 2001;
    } sweep;

    struct Output {
        std::string directory = ".";
        std::string format = "csv";
    } output;

    /// Field-path-qualified validation (throws ConfigError).
    void validate() const;

    Json to_json() const;
    /// Accepts either a bare config or a run manifest (unwraps its "config").
    static SimulationConfig from_json(const Json& j);

    /// Applies a dotted-path override, e.g. "device.f_op_hz=6.1e9"; the value
    /// is parsed as JSON. Unknown paths are rejected.
    void apply_override(const std::string& key_eq_value);

    // Derived builders.
    crlh::CrlhCellParams cell_params() const;
    coupler::CoupledLineParams coupled_params(double l_m) const;
    squid::SquidParams squid_params() const;
    device::DeviceSpec device_spec() const;
    double static_l_m() const;
    std::vector<double> frequency_grid() const;
    double omega_op() const { return 2.0 * pi * device.f_op_hz; }
    double omega_m() const { return 2.0 * pi * squid.f_m_hz; }
};

SimulationConfig load_config(const std::string& path);

}  // namespace crlhsim::config
