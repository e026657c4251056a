#include "crlhsim/device.hpp"

#include <cmath>
#include <sstream>

namespace crlhsim::device {

using netalg::FourPortScattering;

void DeviceSpec::validate() const {
    coupled.validate();
    if (n_c < 1) throw ConfigError("device.n_c must be at least 1");
    if (!(omega_op > 0.0)) throw ConfigError("device.omega_op must be positive");
    if (!(omega_m > 0.0)) throw ConfigError("device.omega_m must be positive");
    if (stage2.theta0_cells < 0.0) {
        throw ConfigError("device.stage2.theta0_cells must be non-negative");
    }
    if (termination == Termination::fixed && !(fixed_z_ohm > 0.0)) {
        throw ConfigError("device.fixed_z_ohm must be positive");
    }
}

double DeviceSpec::cells_up() const {
    if (stage2.cells_up_override) return *stage2.cells_up_override;
    return stage2.theta0_cells;
}

double DeviceSpec::cells_down() const {
    if (stage2.cells_down_override) return *stage2.cells_down_override;
    // The down arm carries the extra length realizing delta_theta at the
    // operating frequency (S = e^{-j beta l}: a longer down arm advances the
    // up entry by +delta_theta relative to it).
    const auto pt = crlh::propagation_constant(coupled.line_up, omega_op);
    if (pt.evanescent) {
        throw OutOfBandError("stage2: bare line evanescent at the operating frequency");
    }
    return stage2.theta0_cells + stage2.delta_theta / pt.beta_cell();
}

Complex DeviceSpec::reference_impedance(double omega) const {
    if (termination == Termination::fixed) return Complex(fixed_z_ohm, 0.0);
    return coupler::uncoupled_line_z0(coupled, omega);
}

Mat2 ideal_coupler_matrix(double phi) {
    const Complex j(0.0, 1.0);
    const double r = 1.0 / std::sqrt(2.0);
    Mat2 m;
    m(0, 0) = r;
    m(0, 1) = -j * std::exp(-j * phi) * r;
    m(1, 0) = -j * std::exp(j * phi) * r;
    m(1, 1) = r;
    return m;
}

std::pair<Mat2, Mat2> ideal_total(double phi1, double dtheta, double phi2) {
    const Complex j(0.0, 1.0);
    const Mat2 mb = Mat2::diag(std::exp(j * dtheta), 1.0);
    const Mat2 m1 = ideal_coupler_matrix(phi1);
    const Mat2 m2 = ideal_coupler_matrix(phi2);
    return {m2 * mb * m1, m1 * mb * m2};
}

namespace {

struct BlochState {
    Complex up, down;

    std::array<double, 3> coords() const {
        const Complex c = std::conj(up) * down;
        return {2.0 * c.real(), 2.0 * c.imag(), std::norm(up) - std::norm(down)};
    }
};

/// Partial coupler evolution, Eq.-of-motion solution up to angle kz.
BlochState couple(const BlochState& s, double kz, double phi) {
    const Complex j(0.0, 1.0);
    const double c = std::cos(kz), sn = std::sin(kz);
    return {c * s.up - j * std::exp(-j * phi) * sn * s.down,
            -j * std::exp(j * phi) * sn * s.up + c * s.down};
}

BlochState shift(const BlochState& s, double theta) {
    const Complex j(0.0, 1.0);
    return {std::exp(j * theta) * s.up, s.down};
}

}  // namespace

std::vector<BlochPoint> bloch_trajectory(PropagationDirection direction,
                                         ModeLabel input, double phi1,
                                         double dtheta, double phi2,
                                         int steps_per_stage) {
    if (steps_per_stage < 2) {
        throw ConfigError("bloch_trajectory: need at least 2 steps per stage");
    }
    const bool fwd = direction == PropagationDirection::forward;
    const double first_phi = fwd ? phi1 : phi2;
    const double second_phi = fwd ? phi2 : phi1;

    BlochState state{input == ModeLabel::up ? 1.0 : 0.0,
                     input == ModeLabel::down ? 1.0 : 0.0};

    std::vector<BlochPoint> traj;
    int step = 0;
    const auto emit = [&](const BlochState& s, const char* stage) {
        const auto c = s.coords();
        traj.push_back({step++, c[0], c[1], c[2], stage});
    };

    emit(state, "input");
    for (int i = 1; i <= steps_per_stage; ++i) {
        emit(couple(state, (pi / 4.0) * i / steps_per_stage, first_phi), "coupler1");
    }
    state = couple(state, pi / 4.0, first_phi);
    for (int i = 1; i <= steps_per_stage; ++i) {
        emit(shift(state, dtheta * i / steps_per_stage), "phase");
    }
    state = shift(state, dtheta);
    for (int i = 1; i <= steps_per_stage; ++i) {
        emit(couple(state, (pi / 4.0) * i / steps_per_stage, second_phi), "coupler2");
    }
    return traj;
}

Mat2 modulated_coupler_s(const Mat2& static_m, double phi) {
    const Complex j(0.0, 1.0);
    Mat2 m = static_m;
    m(0, 1) *= std::exp(-j * phi);
    m(1, 0) *= std::exp(j * phi);
    return m;
}

namespace {

/// Matched-line transmission of a bare line over a (possibly non-integer)
/// number of cells via the homogeneous-line model.
Complex matched_line_s21(const crlh::CrlhCellParams& cell, double omega, double cells) {
    const auto pt = crlh::propagation_constant(cell, omega);
    if (pt.evanescent) {
        std::ostringstream msg;
        msg << "stage2: line evanescent at " << omega / (2.0 * pi) << " Hz";
        throw OutOfBandError(msg.str());
    }
    const auto z0 = crlh::characteristic_impedance(cell, omega);
    if (z0.stopband) {
        throw OutOfBandError("stage2: stopband impedance");
    }
    const double length = cells * cell.pitch;
    const auto abcd = crlh::homogeneous_abcd(pt.beta, z0.z0, length);
    return netalg::abcd_to_s(abcd, z0.z0, omega / (2.0 * pi)).s21;
}

Mat2 stage2_s_for(const crlh::CrlhCellParams& up_cell,
                  const crlh::CrlhCellParams& down_cell,
                  const DeviceSpec& spec, double omega) {
    return Mat2::diag(matched_line_s21(up_cell, omega, spec.cells_up()),
                      matched_line_s21(down_cell, omega, spec.cells_down()));
}

/// Assembles the 4x4 per the port map (1,2 on the up line; 3,4 on the down
/// line) and tags the line-converting transmissions with -+Omega_m.
TotalScattering assemble_total(const Mat2& m_fwd, const Mat2& m_bwd, Complex gamma,
                               Complex upsilon, const DeviceSpec& spec, double omega) {
    TotalScattering t;
    t.frequency_hz = omega / (2.0 * pi);
    auto& s = t.s;
    s[0][0] = gamma;      s[0][1] = m_bwd(0, 0); s[0][2] = upsilon;     s[0][3] = m_bwd(0, 1);
    s[1][0] = m_fwd(0, 0); s[1][1] = gamma;      s[1][2] = m_fwd(0, 1); s[1][3] = upsilon;
    s[2][0] = upsilon;     s[2][1] = m_bwd(1, 0); s[2][2] = gamma;      s[2][3] = m_bwd(1, 1);
    s[3][0] = m_fwd(1, 0); s[3][1] = upsilon;     s[3][2] = m_fwd(1, 1); s[3][3] = gamma;

    // Up -> down conversion absorbs a modulation quantum (+Omega_m); the
    // reverse emits one.
    const double f_m = spec.omega_m / (2.0 * pi);
    t.freq_offset_hz[3][0] = +f_m;  // S41
    t.freq_offset_hz[2][1] = +f_m;  // S32
    t.freq_offset_hz[1][2] = -f_m;  // S23
    t.freq_offset_hz[0][3] = -f_m;  // S14
    return t;
}

}  // namespace

Mat2 stage2_s(const DeviceSpec& spec, double omega) {
    return stage2_s_for(spec.coupled.line_up, spec.coupled.line_down, spec, omega);
}

TotalScattering total_s_cascade(const DeviceSpec& spec, double omega) {
    const Complex zc = spec.reference_impedance(omega);
    const auto cpl = coupler::static_coupler_s(spec.coupled, omega, spec.n_c, zc);
    const Mat2 mb = stage2_s(spec, omega);
    const Mat2 m1 = modulated_coupler_s(cpl.m, spec.phi1);
    const Mat2 m2 = modulated_coupler_s(cpl.m, spec.phi2);
    const Mat2 m_fwd = m2 * mb * m1;
    const Mat2 m_bwd = m1 * mb * m2;
    return assemble_total(m_fwd, m_bwd, cpl.gamma, cpl.upsilon, spec, omega);
}

TotalScattering total_s_fullnetwork(const DeviceSpec& spec, double omega) {
    const double f = omega / (2.0 * pi);
    const Complex zc = spec.reference_impedance(omega);
    const auto cpl = coupler::static_coupler_s(spec.coupled, omega, spec.n_c, zc);

    const auto coupler_stage = [&](double phi) {
        FourPortScattering s;
        s.frequency_hz = f;
        const Mat2 t = modulated_coupler_s(cpl.m, phi);
        Mat2 r;
        r(0, 0) = r(1, 1) = cpl.gamma;
        r(0, 1) = r(1, 0) = cpl.upsilon;
        s.ll = r;
        s.rr = r;
        s.lr = t;
        s.rl = t;
        return s;
    };

    FourPortScattering mid;
    mid.frequency_hz = f;
    mid.lr = stage2_s(spec, omega);
    mid.rl = mid.lr;

    FourPortScattering total;
    try {
        total = netalg::interconnect(
            netalg::interconnect(coupler_stage(spec.phi1), mid), coupler_stage(spec.phi2));
    } catch (const ResonantJunctionError& e) {
        std::ostringstream msg;
        msg << "total_s_fullnetwork: stage junction resonant at " << f
            << " Hz: " << e.what();
        throw ResonantJunctionError(msg.str(), e.condition_number);
    }

    // Interconnection port order is [A-up, A-down, D-up, D-down] =
    // ports [1, 3, 2, 4]; rearrange to the 1..4 numbering.
    const auto m = total.to_matrix();
    static constexpr int perm[4] = {0, 2, 1, 3};
    TotalScattering t;
    t.frequency_hz = f;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) t.s[i][j] = m[perm[i]][perm[j]];
    }
    const double f_m = spec.omega_m / (2.0 * pi);
    t.freq_offset_hz[3][0] = +f_m;
    t.freq_offset_hz[2][1] = +f_m;
    t.freq_offset_hz[1][2] = -f_m;
    t.freq_offset_hz[0][3] = -f_m;
    return t;
}

TotalScattering total_s_closedform(const DeviceSpec& spec, double delta_l_r,
                                   double omega) {
    coupler::CoupledLineParams pair = coupler::CoupledLineParams::make_detuned(
        spec.coupled.line_up, spec.coupled.l_m, spec.coupled.c_m, delta_l_r);
    const auto modes = coupler::c_pi_constants(pair, omega);
    if (modes.complex_modes || modes.evanescent_coupling) {
        std::ostringstream msg;
        msg << "total_s_closedform: coupling undefined at " << omega / (2.0 * pi)
            << " Hz";
        throw OutOfBandError(msg.str());
    }
    const double l_c = spec.n_c * pair.line_up.pitch;
    const Mat2 mc = coupler::asym_coupler_s_closedform(modes, l_c);
    const Mat2 mb = stage2_s_for(pair.line_up, pair.line_down, spec, omega);
    const Mat2 m1 = modulated_coupler_s(mc, spec.phi1);
    const Mat2 m2 = modulated_coupler_s(mc, spec.phi2);
    return assemble_total(m2 * mb * m1, m1 * mb * m2, 0.0, 0.0, spec, omega);
}

IsolationMetrics isolation_metrics(std::span<const TotalScattering> spectrum,
                                   double threshold_db) {
    const size_t n = spectrum.size();
    if (n == 0) throw ConfigError("isolation_metrics: empty spectrum");
    for (size_t i = 1; i < n; ++i) {
        if (!(spectrum[i].frequency_hz > spectrum[i - 1].frequency_hz)) {
            throw ConfigError("isolation_metrics: spectrum grid must ascend");
        }
    }

    std::vector<double> iso(n);
    for (size_t i = 0; i < n; ++i) iso[i] = spectrum[i].db(1, 0) - spectrum[i].db(0, 1);

    IsolationMetrics best;
    size_t i = 0;
    while (i < n) {
        if (iso[i] < threshold_db) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < n && iso[j + 1] >= threshold_db) ++j;

        const auto interp = [&](size_t a, size_t b) {
            // Crossing of the threshold between grid points a < b.
            const double fa = spectrum[a].frequency_hz, fb = spectrum[b].frequency_hz;
            return fa + (fb - fa) * (threshold_db - iso[a]) / (iso[b] - iso[a]);
        };
        const double lo = i == 0 ? spectrum[0].frequency_hz : interp(i - 1, i);
        const double hi = j == n - 1 ? spectrum[n - 1].frequency_hz : interp(j, j + 1);

        if (hi - lo > best.bandwidth_hz) {
            best.band_found = true;
            best.bandwidth_hz = hi - lo;
            best.f_lo_hz = lo;
            best.f_hi_hz = hi;
            double max_s21 = -200.0, max_s11 = -200.0;
            for (size_t k = i; k <= j; ++k) {
                max_s21 = std::max(max_s21, spectrum[k].db(1, 0));
                max_s11 = std::max(max_s11, spectrum[k].db(0, 0));
            }
            best.min_insertion_loss_db = -max_s21;
            best.max_inband_reflection_db = max_s11;
        }
        i = j + 1;
    }
    return best;
}

}  // namespace crlhsim::device
