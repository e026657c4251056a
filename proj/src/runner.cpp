#include "crlhsim/runner.hpp"

#include <filesystem>
#include <fstream>

#include "crlhsim/csv.hpp"
#include "crlhsim/sweep.hpp"

namespace crlhsim::runner {

namespace fs = std::filesystem;
using config::Json;
using config::SimulationConfig;
using csv::Writer;

namespace {

std::string out_path(const SimulationConfig& cfg, const std::string& name) {
    return (fs::path(cfg.output.directory) / name).string();
}

std::vector<device::TotalScattering> cascade_spectrum(const SimulationConfig& cfg) {
    const auto spec = cfg.device_spec();
    return sweep::parallel_map<device::TotalScattering>(
        cfg.frequency_grid(),
        [&](double f) { return device::total_s_cascade(spec, 2.0 * pi * f); });
}

Json metrics_json(const SimulationConfig& cfg,
                  const std::vector<device::TotalScattering>& spectrum,
                  double threshold_db) {
    const auto m = device::isolation_metrics(spectrum, threshold_db);
    Json j;
    j["threshold_db"] = threshold_db;
    j["band_found"] = m.band_found;
    j["bandwidth_hz"] = m.bandwidth_hz;
    j["band_lo_hz"] = m.f_lo_hz;
    j["band_hi_hz"] = m.f_hi_hz;
    j["band_center_hz"] = m.band_found ? (m.f_lo_hz + m.f_hi_hz) / 2.0 : 0.0;
    j["min_insertion_loss_db"] = m.min_insertion_loss_db;
    j["max_inband_reflection_db"] = m.max_inband_reflection_db;

    // In-band crosstalk, split by family: the same-side cross-reflections
    // stay low across the whole band; the reverse transmissions touch
    // (threshold - |S21|) dB at the band edges by construction.
    if (m.band_found) {
        double worst_cross_reflection = -200.0;
        double worst_reverse = -200.0;
        double path_min = 200.0;
        static constexpr int cross_refl[4][2] = {{0, 2}, {2, 0}, {1, 3}, {3, 1}};
        static constexpr int reverse[4][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
        static constexpr int path[4][2] = {{1, 0}, {2, 1}, {3, 2}, {0, 3}};
        for (const auto& pt : spectrum) {
            if (pt.frequency_hz < m.f_lo_hz || pt.frequency_hz > m.f_hi_hz) continue;
            for (const auto& e : cross_refl)
                worst_cross_reflection = std::max(worst_cross_reflection, pt.db(e[0], e[1]));
            for (const auto& e : reverse)
                worst_reverse = std::max(worst_reverse, pt.db(e[0], e[1]));
            for (const auto& e : path) path_min = std::min(path_min, pt.db(e[0], e[1]));
        }
        j["max_inband_cross_reflection_db"] = worst_cross_reflection;
        j["max_inband_reverse_transmission_db"] = worst_reverse;
        j["min_inband_circulation_path_db"] = path_min;
    }

    // Point values at the operating frequency (nearest grid sample).
    const double f_op = cfg.device.f_op_hz;
    size_t best = 0;
    for (size_t i = 1; i < spectrum.size(); ++i) {
        if (std::abs(spectrum[i].frequency_hz - f_op) <
            std::abs(spectrum[best].frequency_hz - f_op)) {
            best = i;
        }
    }
    const auto& op = spectrum[best];
    j["f_op_hz"] = f_op;
    j["isolation_at_f_op_db"] = op.db(1, 0) - op.db(0, 1);
    j["s21_at_f_op_db"] = op.db(1, 0);
    j["s11_at_f_op_db"] = op.db(0, 0);
    return j;
}

// --- subcommands -----------------------------------------------------------

RunResult run_dispersion(const SimulationConfig& cfg) {
    const auto grid = cfg.frequency_grid();
    const auto cell = cfg.cell_params();

    Writer bare(out_path(cfg, "dispersion_bare.csv"),
                {"frequency_hz", "beta_rad_per_cell", "alpha_rad_per_cell",
                 "z0_real_ohm", "z0_imag_ohm", "band_label"});
    for (double f : grid) {
        const double w = 2.0 * pi * f;
        const auto pt = crlh::propagation_constant(cell, w);
        const auto z0 = crlh::characteristic_impedance(cell, w);
        bare.row({f, pt.beta_cell(), pt.alpha_cell(), z0.z0.real(), z0.z0.imag(),
                  std::string(crlh::band_name(pt.band))});
    }

    const auto odd = coupler::even_odd_cells(cfg.coupled_params(0.0)).second;
    const auto even_off =
        coupler::even_odd_cells(cfg.coupled_params(cfg.coupler.l_m_off_h)).first;
    const auto even_on =
        coupler::even_odd_cells(cfg.coupled_params(cfg.coupler.l_m_on_h)).first;

    Writer modes(out_path(cfg, "dispersion_modes.csv"),
                 {"frequency_hz", "beta_odd_rad_per_cell",
                  "beta_even_off_rad_per_cell", "beta_even_on_rad_per_cell"});
    for (double f : grid) {
        const double w = 2.0 * pi * f;
        modes.row({f, crlh::propagation_constant(odd, w).signed_beta_cell(),
                   crlh::propagation_constant(even_off, w).signed_beta_cell(),
                   crlh::propagation_constant(even_on, w).signed_beta_cell()});
    }
    return {{"dispersion_bare.csv", "dispersion_modes.csv"}, ""};
}

RunResult run_coupling(const SimulationConfig& cfg) {
    const auto grid = cfg.frequency_grid();
    const auto off = cfg.coupled_params(cfg.coupler.l_m_off_h);
    const auto on = cfg.coupled_params(cfg.coupler.l_m_on_h);
    const double pitch = cfg.cell.pitch_m;

    struct Row { double k_off, k_on; };
    const auto rows = sweep::parallel_map<Row>(grid, [&](double f) {
        const double w = 2.0 * pi * f;
        return Row{coupler::coupling_coefficient(off, w).k0 * pitch,
                   coupler::coupling_coefficient(on, w).k0 * pitch};
    });

    Writer out(out_path(cfg, "coupling_vs_frequency.csv"),
               {"frequency_hz", "k_off_rad_per_cell", "k_on_rad_per_cell"});
    for (size_t i = 0; i < grid.size(); ++i) {
        out.row({grid[i], rows[i].k_off, rows[i].k_on});
    }
    return {{"coupling_vs_frequency.csv"}, ""};
}

RunResult run_coupler(const SimulationConfig& cfg) {
    const auto grid = cfg.frequency_grid();
    const auto pair = cfg.coupled_params(cfg.static_l_m());
    const auto spec = cfg.device_spec();

    const auto rows = sweep::parallel_map<coupler::CouplerScattering>(
        grid, [&](double f) {
            const double w = 2.0 * pi * f;
            return coupler::static_coupler_s(pair, w, cfg.coupler.n_c,
                                             spec.reference_impedance(w));
        });

    Writer out(out_path(cfg, "coupler_sparams.csv"),
               {"frequency_hz", "m_uu_db", "m_du_db", "gamma_db", "upsilon_db"});
    for (size_t i = 0; i < grid.size(); ++i) {
        const auto& c = rows[i];
        out.row({grid[i], to_db(c.m(0, 0)), to_db(c.m(1, 0)), to_db(c.gamma),
                 to_db(c.upsilon)});
    }
    return {{"coupler_sparams.csv"}, ""};
}

RunResult run_squid(const SimulationConfig& cfg) {
    const auto sq = cfg.squid_params();
    const auto base = cfg.coupled_params(0.0);
    const double pitch = cfg.cell.pitch_m;
    const double w_op = cfg.omega_op();

    Writer lm_flux(out_path(cfg, "squid_lm_vs_flux.csv"),
                   {"phi_over_phi0", "l_m_picohenry"});
    const int n_flux = 501;
    for (int i = 0; i < n_flux; ++i) {
        const double phi = 0.5 * i / (n_flux - 1);
        lm_flux.row({phi, squid::l_m(sq, phi) * 1e12});
    }

    const auto op = squid::solve_operating_fluxes(sq, base, w_op,
                                                  cfg.coupler.l_m_on_h,
                                                  cfg.coupler.l_m_off_h);

    Writer k_lm(out_path(cfg, "squid_k_vs_lm.csv"),
                {"l_m_picohenry", "k_rad_per_cell"});
    const int n_lm = 201;
    for (int i = 0; i < n_lm; ++i) {
        const double lm = cfg.coupler.l_m_off_h +
                          (cfg.coupler.l_m_on_h - cfg.coupler.l_m_off_h) * i / (n_lm - 1);
        auto pair = base;
        pair.l_m = lm;
        k_lm.row({lm * 1e12, coupler::coupling_coefficient(pair, w_op).k0 * pitch});
    }

    const auto waveform_file = [&](const std::string& name, double phase) {
        const auto wf =
            squid::flux_waveform(sq, base, w_op, cfg.omega_m(), phase, 201, op);
        Writer out(out_path(cfg, name), {"t_ns", "phi_over_phi0", "k_rad_per_cell"});
        for (size_t i = 0; i < wf.t_s.size(); ++i) {
            out.row({wf.t_s[i] * 1e9, wf.phi[i],
                     squid::k_of_flux(sq, base, w_op, wf.phi[i]) * pitch});
        }
    };
    waveform_file("squid_waveform_phase1.csv", cfg.device.phi_1_rad);
    waveform_file("squid_waveform_phase2.csv", cfg.device.phi_2_rad);

    Json summary;
    summary["i_c_na"] = sq.critical_current() * 1e9;
    summary["l_g_ph"] = sq.l_g() * 1e12;
    summary["phi_on_over_phi0"] = op.phi_on;
    summary["phi_off_over_phi0"] = op.phi_off;
    summary["k0_rad_per_cell"] = op.k0 * pitch;
    return {{"squid_lm_vs_flux.csv", "squid_k_vs_lm.csv", "squid_waveform_phase1.csv",
             "squid_waveform_phase2.csv"},
            summary.dump(2)};
}

RunResult run_isolation(const SimulationConfig& cfg) {
    const auto grid = cfg.frequency_grid();
    const auto spectrum = cascade_spectrum(cfg);

    Writer out(out_path(cfg, "isolation_spectrum.csv"),
               {"frequency_hz", "s21_db", "s12_db", "s11_db"});
    for (size_t i = 0; i < grid.size(); ++i) {
        const auto& s = spectrum[i];
        out.row({grid[i], s.db(1, 0), s.db(0, 1), s.db(0, 0)});
    }
    return {{"isolation_spectrum.csv"}, metrics_json(cfg, spectrum, 20.0).dump(2)};
}

RunResult run_circulator(const SimulationConfig& cfg) {
    const auto grid = cfg.frequency_grid();
    const auto spectrum = cascade_spectrum(cfg);

    std::vector<std::string> cols{"frequency_hz"};
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            cols.push_back("s" + std::to_string(i) + std::to_string(j) + "_db");
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            cols.push_back("offset_s" + std::to_string(i) + std::to_string(j) + "_hz");

    Writer out(out_path(cfg, "circulator_spectrum.csv"), cols);
    for (size_t k = 0; k < grid.size(); ++k) {
        std::vector<Writer::Value> row{grid[k]};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) row.push_back(spectrum[k].db(i, j));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) row.push_back(spectrum[k].freq_offset_hz[i][j]);
        out.row(row);
    }
    return {{"circulator_spectrum.csv"}, metrics_json(cfg, spectrum, 20.0).dump(2)};
}

RunResult run_tl_compare(const SimulationConfig& cfg) {
    const auto grid = cfg.frequency_grid();
    const auto cell = cfg.cell_params();
    const int cells = 40;
    const Complex zc(50.0, 0.0);

    Writer out(out_path(cfg, "tl_compare.csv"),
               {"frequency_hz", "s21_ncell_db", "s11_ncell_db", "s21_hom_db",
                "s11_hom_db"});
    for (double f : grid) {
        const double w = 2.0 * pi * f;
        const auto s_n = netalg::abcd_to_s(crlh::line_abcd(cell, w, cells), zc, f);
        const auto pt = crlh::propagation_constant(cell, w);
        const auto z0 = crlh::characteristic_impedance(cell, w);
        const auto s_h = netalg::abcd_to_s(
            crlh::homogeneous_abcd(pt.beta, z0.z0, cells * cell.pitch), zc, f);
        out.row({f, to_db(s_n.s21), to_db(s_n.s11), to_db(s_h.s21), to_db(s_h.s11)});
    }
    return {{"tl_compare.csv"}, ""};
}

RunResult run_asym_compare(const SimulationConfig& cfg) {
    const auto grid = cfg.frequency_grid();
    const auto spec = cfg.device_spec();
    const double delta = cfg.coupler.delta_l_r_h;
    const double l_c = cfg.coupler.n_c * cfg.cell.pitch_m;

    {
        Writer out(out_path(cfg, "asym_coupler.csv"),
                   {"frequency_hz", "m_uu_off_db", "m_du_off_db", "m_uu_on_db",
                    "m_du_on_db"});
        const auto entry = [&](double f, double l_m) {
            const auto pair = coupler::CoupledLineParams::make_detuned(
                cfg.cell_params(), l_m, cfg.coupler.c_m_f, delta);
            const auto modes = coupler::c_pi_constants(pair, 2.0 * pi * f);
            return coupler::asym_coupler_s_closedform(modes, l_c);
        };
        for (double f : grid) {
            const auto off = entry(f, cfg.coupler.l_m_off_h);
            const auto on = entry(f, cfg.coupler.l_m_on_h);
            out.row({f, to_db(off(0, 0)), to_db(off(1, 0)), to_db(on(0, 0)),
                     to_db(on(1, 0))});
        }
    }

    struct Row { double s21_sym, s12_sym, s21_asym, s12_asym; };
    const auto rows = sweep::parallel_map<Row>(grid, [&](double f) {
        const double w = 2.0 * pi * f;
        const auto sym = device::total_s_closedform(spec, 0.0, w);
        const auto asym = device::total_s_closedform(spec, delta, w);
        return Row{sym.db(1, 0), sym.db(0, 1), asym.db(1, 0), asym.db(0, 1)};
    });
    Writer out(out_path(cfg, "asym_isolation.csv"),
               {"frequency_hz", "s21_sym_db", "s12_sym_db", "s21_asym_db",
                "s12_asym_db"});
    for (size_t i = 0; i < grid.size(); ++i) {
        out.row({grid[i], rows[i].s21_sym, rows[i].s12_sym, rows[i].s21_asym,
                 rows[i].s12_asym});
    }
    return {{"asym_coupler.csv", "asym_isolation.csv"}, ""};
}

RunResult run_fullnet_compare(const SimulationConfig& cfg) {
    const auto grid = cfg.frequency_grid();
    const auto spec = cfg.device_spec();

    struct Row { double c21, c12, c11, f21, f12, f11; };
    const auto rows = sweep::parallel_map<Row>(grid, [&](double f) {
        const double w = 2.0 * pi * f;
        const auto c = device::total_s_cascade(spec, w);
        const auto full = device::total_s_fullnetwork(spec, w);
        return Row{c.db(1, 0), c.db(0, 1), c.db(0, 0),
                   full.db(1, 0), full.db(0, 1), full.db(0, 0)};
    });

    Writer out(out_path(cfg, "fullnet_compare.csv"),
               {"frequency_hz", "s21_cascade_db", "s12_cascade_db", "s11_cascade_db",
                "s21_fullnet_db", "s12_fullnet_db", "s11_fullnet_db"});
    for (size_t i = 0; i < grid.size(); ++i) {
        const auto& r = rows[i];
        out.row({grid[i], r.c21, r.c12, r.c11, r.f21, r.f12, r.f11});
    }
    return {{"fullnet_compare.csv"}, ""};
}

RunResult run_bloch(const SimulationConfig& cfg) {
    const auto emit = [&](const std::string& name, device::PropagationDirection dir) {
        const auto traj = device::bloch_trajectory(
            dir, device::ModeLabel::up, cfg.device.phi_1_rad,
            cfg.device.delta_theta_rad, cfg.device.phi_2_rad, 24);
        Writer out(out_path(cfg, name),
                   {"step_index", "x", "y", "z", "stage_label"});
        for (const auto& p : traj) out.row({p.step, p.x, p.y, p.z, p.stage});
    };
    emit("bloch_forward.csv", device::PropagationDirection::forward);
    emit("bloch_backward.csv", device::PropagationDirection::backward);
    return {{"bloch_forward.csv", "bloch_backward.csv"}, ""};
}

RunResult run_metrics(const SimulationConfig& cfg) {
    const auto spectrum = cascade_spectrum(cfg);
    return {{}, metrics_json(cfg, spectrum, 20.0).dump(2)};
}

void write_manifest(const SimulationConfig& cfg, const std::string& subcommand,
                    const std::vector<std::string>& outputs) {
    Json m;
    m["tool"] = "crlhsim";
    m["subcommand"] = subcommand;
    m["config"] = cfg.to_json();
    m["outputs"] = outputs;
    std::ofstream out(out_path(cfg, "run_manifest.json"), std::ios::binary);
    if (!out) throw Error("cannot write run manifest");
    out << m.dump(2) << '\n';
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{
        "dispersion", "coupling",     "coupler",        "squid",
        "isolation",  "circulator",   "tl-compare",     "asym-compare",
        "fullnet-compare", "bloch",   "metrics"};
    return names;
}

RunResult run(const std::string& subcommand, const SimulationConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.output.directory);

    RunResult r;
    if (subcommand == "dispersion") r = run_dispersion(cfg);
    else if (subcommand == "coupling") r = run_coupling(cfg);
    else if (subcommand == "coupler") r = run_coupler(cfg);
    else if (subcommand == "squid") r = run_squid(cfg);
    else if (subcommand == "isolation") r = run_isolation(cfg);
    else if (subcommand == "circulator") r = run_circulator(cfg);
    else if (subcommand == "tl-compare") r = run_tl_compare(cfg);
    else if (subcommand == "asym-compare") r = run_asym_compare(cfg);
    else if (subcommand == "fullnet-compare") r = run_fullnet_compare(cfg);
    else if (subcommand == "bloch") r = run_bloch(cfg);
    else if (subcommand == "metrics") r = run_metrics(cfg);
    else throw ConfigError("unknown subcommand: " + subcommand);

    write_manifest(cfg, subcommand, r.outputs);
    return r;
}

}  // namespace crlhsim::runner
