#include "crlhsim/coupler.hpp"

#include <cmath>
#include <sstream>

namespace crlhsim::coupler {

using crlh::Band;
using crlh::CrlhCellParams;

bool CoupledLineParams::symmetric() const {
    return line_up.l_r == line_down.l_r && line_up.c_r == line_down.c_r &&
           line_up.l_l == line_down.l_l && line_up.c_l == line_down.c_l &&
           line_up.pitch == line_down.pitch && line_up.dl_r == line_down.dl_r;
}

void CoupledLineParams::validate() const {
    line_up.validate();
    line_down.validate();
    if (c_m < 0.0) throw ConfigError("coupler.c_m must be non-negative");
    if (line_up.pitch != line_down.pitch) {
        throw ConfigError("coupler: both lines must share the cell pitch");
    }
}

CoupledLineParams CoupledLineParams::make_symmetric(const CrlhCellParams& cell,
                                                    double l_m, double c_m) {
    CoupledLineParams c{cell, cell, l_m, c_m};
    return c;
}

CoupledLineParams CoupledLineParams::make_detuned(const CrlhCellParams& cell,
                                                  double l_m, double c_m,
                                                  double delta_l_r) {
    CoupledLineParams c{cell, cell, l_m, c_m};
    c.line_up.dl_r = cell.dl_r - delta_l_r;
    c.line_down.dl_r = cell.dl_r + delta_l_r;
    return c;
}

std::pair<CrlhCellParams, CrlhCellParams> even_odd_cells(const CoupledLineParams& c) {
    if (!c.symmetric()) {
        throw MisuseError(
            "even_odd_cells: coupled line is asymmetric; use c_pi_constants");
    }
    CrlhCellParams even = c.line_up;
    even.l_r += 2.0 * c.l_m;
    CrlhCellParams odd = c.line_up;
    odd.c_r += 2.0 * c.c_m;
    return {even, odd};
}

namespace {

crlh::DispersionPoint in_band_dispersion(const CrlhCellParams& cell, double omega,
                                         const char* what) {
    const auto pt = crlh::propagation_constant(cell, omega);
    if (pt.evanescent) {
        std::ostringstream msg;
        msg << what << ": mode evanescent at " << omega / (2.0 * pi) << " Hz";
        throw OutOfBandError(msg.str());
    }
    return pt;
}

}  // namespace

NormalModes coupling_coefficient(const CoupledLineParams& c, double omega) {
    if (!c.symmetric()) {
        NormalModes nm = c_pi_constants(c, omega);
        if (nm.complex_modes) {
            std::ostringstream msg;
            msg << "coupling_coefficient: mode evanescent at " << omega / (2.0 * pi)
                << " Hz";
            throw OutOfBandError(msg.str());
        }
        return nm;
    }

    const auto [even, odd] = even_odd_cells(c);
    const auto pe = in_band_dispersion(even, omega, "coupling_coefficient(even)");
    const auto po = in_band_dispersion(odd, omega, "coupling_coefficient(odd)");

    NormalModes nm;
    nm.frequency_hz = omega / (2.0 * pi);
    nm.beta_c = pe.signed_beta();
    nm.beta_pi = po.signed_beta();
    nm.delta_beta_0 = 0.0;
    nm.delta_beta_c = nm.beta_c - nm.beta_pi;
    nm.k0 = nm.delta_beta_c / 2.0;
    return nm;
}

NormalModes c_pi_constants(const CoupledLineParams& c, double omega) {
    if (!(omega > 0.0)) throw ConfigError("c_pi_constants: omega must be positive");
    const double pitch = c.line_up.pitch;
    const Complex j(0.0, 1.0);
    const Complex zm = j * omega * c.l_m;
    const Complex ym = -j * omega * c.c_m;

    // Per-cell impedance/admittance matrices of the coupled pair. The shared
    // series element adds +jwL_m to each line's self-impedance and the bridge
    // capacitor +jwC_m to each self-admittance, so the symmetric eigenvalues
    // land exactly on the even/odd substitution rule.
    const Complex zu = crlh::series_impedance(c.line_up, omega) + zm;
    const Complex zd = crlh::series_impedance(c.line_down, omega) + zm;
    const Complex yu = crlh::shunt_admittance(c.line_up, omega) - ym;
    const Complex yd = crlh::shunt_admittance(c.line_down, omega) - ym;

    const Complex a = zu * yu + zm * ym;
    const Complex b = zu * ym + zm * yd;
    const Complex cc = zd * ym + zm * yu;
    const Complex d = zd * yd + zm * ym;

    const Complex disc = std::sqrt((a - d) * (a - d) + 4.0 * b * cc);
    const Complex lam_plus = (a + d) / 2.0 + disc / 2.0;
    const Complex lam_minus = (a + d) / 2.0 - disc / 2.0;

    // Even-like (c) branch: eigenvector components share a sign, i.e.
    // (lambda - a)/b has positive real part. Uncoupled pairs (b = 0)
    // degenerate to the individual lines; keep line-up as the c branch.
    Complex lam_c = lam_plus, lam_pi = lam_minus;
    if (std::abs(b) > 0.0) {
        if (((lam_plus - a) / b).real() < 0.0) std::swap(lam_c, lam_pi);
    } else if (std::abs(lam_plus - a) > std::abs(lam_minus - a)) {
        std::swap(lam_c, lam_pi);
    }

    // Map the per-cell eigenproducts through the lattice Bloch relation.
    const auto lattice_theta = [&](Complex zy) { return std::acos(1.0 + zy / 2.0); };
    const Complex th_c = lattice_theta(lam_c);
    const Complex th_pi = lattice_theta(lam_pi);

    // Sign convention comes from the underlying lines' band; Delta-beta_0
    // always refers to the uncoupled (bare) lines.
    const auto pu = crlh::propagation_constant(c.line_up, omega);
    const auto pd = crlh::propagation_constant(c.line_down, omega);
    const double sign = pu.band == Band::left_handed ? -1.0 : 1.0;

    NormalModes nm;
    nm.frequency_hz = omega / (2.0 * pi);
    nm.complex_modes = std::abs(th_c.imag()) > 1e-9 || std::abs(th_pi.imag()) > 1e-9 ||
                       pu.evanescent || pd.evanescent;
    nm.beta_c = sign * th_c.real() / pitch;
    nm.beta_pi = sign * th_pi.real() / pitch;
    nm.delta_beta_c = nm.beta_c - nm.beta_pi;
    nm.delta_beta_0 = pd.signed_beta() - pu.signed_beta();

    const double radicand = nm.delta_beta_c * nm.delta_beta_c -
                            nm.delta_beta_0 * nm.delta_beta_0;
    if (radicand < 0.0) {
        nm.evanescent_coupling = true;
        nm.k0 = 0.0;
    } else {
        nm.k0 = std::copysign(std::sqrt(radicand) / 2.0, nm.delta_beta_c);
    }
    return nm;
}

CouplerScattering static_coupler_s(const CoupledLineParams& c, double omega,
                                   int cells, Complex zc) {
    if (!c.symmetric()) {
        throw MisuseError("static_coupler_s: requires a symmetric coupled line");
    }
    const auto [even, odd] = even_odd_cells(c);
    const double f = omega / (2.0 * pi);
    const auto se = netalg::abcd_to_s(crlh::line_abcd(even, omega, cells), zc, f);
    const auto so = netalg::abcd_to_s(crlh::line_abcd(odd, omega, cells), zc, f);

    CouplerScattering out;
    out.m(0, 0) = (se.s21 + so.s21) / 2.0;
    out.m(1, 0) = (se.s21 - so.s21) / 2.0;
    out.m(0, 1) = out.m(1, 0);
    out.m(1, 1) = out.m(0, 0);
    out.gamma = (se.s11 + so.s11) / 2.0;
    out.upsilon = (se.s11 - so.s11) / 2.0;
    out.z_ref = zc;
    out.frequency_hz = f;
    return out;
}

Mat2 asym_coupler_s_closedform(const NormalModes& modes, double coupling_length) {
    const double dbc = modes.delta_beta_c;
    const double db0 = modes.delta_beta_0;
    if (dbc == 0.0) return Mat2::identity();
    if (modes.evanescent_coupling) {
        throw OutOfBandError("asym_coupler_s_closedform: evanescent coupling (imaginary K0)");
    }

    const Complex j(0.0, 1.0);
    const double half = dbc * coupling_length / 2.0;
    const double cs = std::cos(half);
    const double sn = std::sin(half);
    const Complex ph = std::exp(-j * (db0 * coupling_length / 2.0));
    const double cross_amp = 2.0 * modes.k0 / dbc;

    Mat2 m;
    m(0, 0) = ph * (cs + j * (db0 / dbc) * sn);
    m(1, 0) = -j * ph * cross_amp * sn;
    m(0, 1) = -j * std::conj(ph) * cross_amp * sn;
    m(1, 1) = std::conj(ph) * (cs - j * (db0 / dbc) * sn);
    return m;
}

double three_db_length_residual(const NormalModes& modes, int cells, double pitch) {
    return std::abs(modes.k0) * cells * pitch - pi / 4.0;
}

Complex uncoupled_line_z0(const CoupledLineParams& c, double omega) {
    const auto z0 = crlh::characteristic_impedance(c.line_up, omega);
    if (z0.stopband) {
        std::ostringstream msg;
        msg << "uncoupled_line_z0: stopband (imaginary Z0) at " << omega / (2.0 * pi)
            << " Hz";
        throw OutOfBandError(msg.str());
    }
    return z0.z0;
}

}  // namespace crlhsim::coupler
