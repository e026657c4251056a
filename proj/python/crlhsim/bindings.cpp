#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crlhsim/config.hpp"
#include "crlhsim/coupler.hpp"
#include "crlhsim/crlh.hpp"
#include "crlhsim/device.hpp"
#include "crlhsim/netalg.hpp"
#include "crlhsim/squid.hpp"

namespace py = pybind11;
using namespace crlhsim;

namespace {

std::array<std::array<Complex, 2>, 2> mat2_to_array(const Mat2& m) {
    return {{{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Simulator core for temporally modulated coupled CRLH-line "
              "isolators/circulators";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<crlh::CrlhCellParams>(m, "CrlhCellParams")
        .def(py::init([](double l_r, double c_r, double l_l, double c_l,
                         double pitch, double dl_r) {
                 return crlh::CrlhCellParams{l_r, c_r, l_l, c_l, pitch, dl_r};
             }),
             py::arg("l_r"), py::arg("c_r"), py::arg("l_l"), py::arg("c_l"),
             py::arg("pitch") = 300e-6, py::arg("dl_r") = 0.0)
        .def_readwrite("l_r", &crlh::CrlhCellParams::l_r)
        .def_readwrite("c_r", &crlh::CrlhCellParams::c_r)
        .def_readwrite("l_l", &crlh::CrlhCellParams::l_l)
        .def_readwrite("c_l", &crlh::CrlhCellParams::c_l)
        .def_readwrite("pitch", &crlh::CrlhCellParams::pitch)
        .def_readwrite("dl_r", &crlh::CrlhCellParams::dl_r);

    py::enum_<crlh::Band>(m, "Band")
        .value("left_handed", crlh::Band::left_handed)
        .value("right_handed", crlh::Band::right_handed)
        .value("gap", crlh::Band::gap);

    py::class_<crlh::DispersionPoint>(m, "DispersionPoint")
        .def_readonly("frequency_hz", &crlh::DispersionPoint::frequency_hz)
        .def_readonly("beta", &crlh::DispersionPoint::beta)
        .def_readonly("alpha", &crlh::DispersionPoint::alpha)
        .def_readonly("evanescent", &crlh::DispersionPoint::evanescent)
        .def_readonly("band", &crlh::DispersionPoint::band)
        .def("beta_cell", &crlh::DispersionPoint::beta_cell)
        .def("signed_beta", &crlh::DispersionPoint::signed_beta)
        .def("signed_beta_cell", &crlh::DispersionPoint::signed_beta_cell);

    m.def("series_impedance", &crlh::series_impedance, py::arg("cell"), py::arg("omega"));
    m.def("shunt_admittance", &crlh::shunt_admittance, py::arg("cell"), py::arg("omega"));
    m.def("propagation_constant", &crlh::propagation_constant, py::arg("cell"),
          py::arg("omega"));
    m.def(
        "characteristic_impedance",
        [](const crlh::CrlhCellParams& cell, double omega) {
            const auto z = crlh::characteristic_impedance(cell, omega);
            return py::make_tuple(z.z0, z.stopband);
        },
        py::arg("cell"), py::arg("omega"),
        "Returns (z0, stopband_flag).");
    m.def("series_resonance_hz", &crlh::series_resonance_hz);
    m.def("shunt_resonance_hz", &crlh::shunt_resonance_hz);

    py::class_<coupler::CoupledLineParams>(m, "CoupledLineParams")
        .def_static("make_symmetric", &coupler::CoupledLineParams::make_symmetric,
                    py::arg("cell"), py::arg("l_m"), py::arg("c_m"))
        .def_static("make_detuned", &coupler::CoupledLineParams::make_detuned,
                    py::arg("cell"), py::arg("l_m"), py::arg("c_m"),
                    py::arg("delta_l_r"))
        .def_readwrite("l_m", &coupler::CoupledLineParams::l_m)
        .def_readwrite("c_m", &coupler::CoupledLineParams::c_m)
        .def("symmetric", &coupler::CoupledLineParams::symmetric);

    py::class_<coupler::NormalModes>(m, "NormalModes")
        .def_readonly("beta_c", &coupler::NormalModes::beta_c)
        .def_readonly("beta_pi", &coupler::NormalModes::beta_pi)
        .def_readonly("delta_beta_0", &coupler::NormalModes::delta_beta_0)
        .def_readonly("delta_beta_c", &coupler::NormalModes::delta_beta_c)
        .def_readonly("k0", &coupler::NormalModes::k0)
        .def_readonly("evanescent_coupling", &coupler::NormalModes::evanescent_coupling)
        .def_readonly("complex_modes", &coupler::NormalModes::complex_modes);

    m.def("coupling_coefficient", &coupler::coupling_coefficient, py::arg("pair"),
          py::arg("omega"));
    m.def("c_pi_constants", &coupler::c_pi_constants, py::arg("pair"), py::arg("omega"));
    m.def(
        "static_coupler_s",
        [](const coupler::CoupledLineParams& c, double omega, int cells, Complex zc) {
            const auto s = coupler::static_coupler_s(c, omega, cells, zc);
            return py::make_tuple(mat2_to_array(s.m), s.gamma, s.upsilon);
        },
        py::arg("pair"), py::arg("omega"), py::arg("cells"), py::arg("zc"),
        "Returns (mode_matrix, gamma, upsilon).");
    m.def("uncoupled_line_z0", &coupler::uncoupled_line_z0, py::arg("pair"),
          py::arg("omega"));

    py::class_<squid::SquidParams>(m, "SquidParams")
        .def(py::init([](double l_s, double l_p, double l_b, double l_dir,
                         double beta_l) {
                 return squid::SquidParams{l_s, l_p, l_b, l_dir, beta_l};
             }),
             py::arg("l_s"), py::arg("l_p"), py::arg("l_b"), py::arg("l_dir"),
             py::arg("beta_l"))
        .def("l_g", &squid::SquidParams::l_g)
        .def("critical_current", &squid::SquidParams::critical_current);

    m.attr("FLUX_QUANTUM") = squid::flux_quantum;
    m.def("l_rf", &squid::l_rf, py::arg("squid"), py::arg("phi"));
    m.def("l_m", &squid::l_m, py::arg("squid"), py::arg("phi"));
    m.def("k_of_flux", &squid::k_of_flux, py::arg("squid"), py::arg("base"),
          py::arg("omega_op"), py::arg("phi"));
    m.def(
        "flux_waveform",
        [](const squid::SquidParams& s, const coupler::CoupledLineParams& base,
           double omega_op, double omega_m, double phase, int n_samples,
           double l_m_on, double l_m_off) {
            const auto op = squid::solve_operating_fluxes(s, base, omega_op,
                                                          l_m_on, l_m_off);
            const auto wf = squid::flux_waveform(s, base, omega_op, omega_m, phase,
                                                 n_samples, op);
            return py::make_tuple(wf.t_s, wf.phi, op.k0);
        },
        py::arg("squid"), py::arg("base"), py::arg("omega_op"), py::arg("omega_m"),
        py::arg("phase"), py::arg("n_samples"), py::arg("l_m_on"), py::arg("l_m_off"),
        "Returns (t_s, phi_over_phi0, k0).");

    m.def(
        "ideal_coupler_matrix",
        [](double phi) { return mat2_to_array(device::ideal_coupler_matrix(phi)); },
        py::arg("phi"));
    m.def(
        "ideal_total",
        [](double phi1, double dtheta, double phi2) {
            const auto [fwd, bwd] = device::ideal_total(phi1, dtheta, phi2);
            return py::make_tuple(mat2_to_array(fwd), mat2_to_array(bwd));
        },
        py::arg("phi1"), py::arg("dtheta"), py::arg("phi2"));

    py::class_<device::TotalScattering>(m, "TotalScattering")
        .def_readonly("frequency_hz", &device::TotalScattering::frequency_hz)
        .def_property_readonly(
            "s", [](const device::TotalScattering& t) { return t.s; })
        .def_property_readonly(
            "freq_offset_hz",
            [](const device::TotalScattering& t) { return t.freq_offset_hz; })
        .def("db", &device::TotalScattering::db, py::arg("row"), py::arg("col"));

    py::class_<device::IsolationMetrics>(m, "IsolationMetrics")
        .def_readonly("band_found", &device::IsolationMetrics::band_found)
        .def_readonly("bandwidth_hz", &device::IsolationMetrics::bandwidth_hz)
        .def_readonly("f_lo_hz", &device::IsolationMetrics::f_lo_hz)
        .def_readonly("f_hi_hz", &device::IsolationMetrics::f_hi_hz)
        .def_readonly("min_insertion_loss_db",
                      &device::IsolationMetrics::min_insertion_loss_db)
        .def_readonly("max_inband_reflection_db",
                      &device::IsolationMetrics::max_inband_reflection_db);

    py::class_<config::SimulationConfig>(m, "SimulationConfig")
        .def(py::init<>())
        .def_static(
            "from_json_str",
            [](const std::string& text) {
                return config::SimulationConfig::from_json(config::Json::parse(text));
            })
        .def("to_json_str",
             [](const config::SimulationConfig& c) { return c.to_json().dump(2); })
        .def("apply_override", &config::SimulationConfig::apply_override)
        .def("validate", &config::SimulationConfig::validate)
        .def("frequency_grid", &config::SimulationConfig::frequency_grid);

    m.def(
        "isolation_spectrum",
        [](const config::SimulationConfig& cfg) {
            cfg.validate();
            const auto spec = cfg.device_spec();
            std::vector<device::TotalScattering> out;
            for (double f : cfg.frequency_grid()) {
                out.push_back(device::total_s_cascade(spec, 2.0 * pi * f));
            }
            return out;
        },
        py::arg("config"),
        "Total 4-port scattering (cascade model) over the configured sweep.");
    m.def(
        "isolation_metrics",
        [](const std::vector<device::TotalScattering>& spectrum, double threshold_db) {
            return device::isolation_metrics(spectrum, threshold_db);
        },
        py::arg("spectrum"), py::arg("threshold_db") = 20.0);
}
