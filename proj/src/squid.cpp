#include "crlhsim/squid.hpp"

#include <cmath>
#include <sstream>

namespace crlhsim::squid {

void SquidParams::validate(double line_l_r) const {
    if (!(beta_l > 0.0 && beta_l < 1.0)) {
        throw ConfigError("squid.beta_l must lie in (0, 1) (non-hysteretic regime)");
    }
    if (!(l_s > 0.0 && l_p > 0.0 && l_b > 0.0)) {
        throw ConfigError("squid inductances must be strictly positive");
    }
    const double sum = l_s + l_p;
    if (std::abs(sum - line_l_r) > 1e-9 * line_l_r) {
        std::ostringstream msg;
        msg << "squid: L_S + L_P = " << sum << " H must equal the line L_R = "
            << line_l_r << " H";
        throw ConfigError(msg.str());
    }
}

double l_rf(const SquidParams& s, double phi) {
    const double c = std::cos(2.0 * pi * phi);
    if (std::abs(c) < 1e-12) {
        std::ostringstream msg;
        msg << "l_rf diverges at phi = " << phi << " Phi_0 (cosine zero)";
        throw DivergenceError(msg.str());
    }
    return s.l_g() * (1.0 + s.beta_l * c) / (s.beta_l * c);
}

double l_m(const SquidParams& s, double phi) {
    // L_dir + L_S^2/L_rf with L_rf expanded; finite (= L_dir) at the cosine
    // zero where L_rf itself diverges.
    const double c = std::cos(2.0 * pi * phi);
    return s.l_dir + s.l_s * s.l_s * s.beta_l * c / (s.l_g() * (1.0 + s.beta_l * c));
}

double k_of_flux(const SquidParams& s, const coupler::CoupledLineParams& base,
                 double omega_op, double phi) {
    coupler::CoupledLineParams c = base;
    c.l_m = l_m(s, phi);
    return coupler::coupling_coefficient(c, omega_op).k0;
}

double solve_flux_for_lm(const SquidParams& s, double target_lm,
                         double phi_lo, double phi_hi) {
    double lo = phi_lo, hi = phi_hi;
    double flo = l_m(s, lo) - target_lm;
    double fhi = l_m(s, hi) - target_lm;
    if (flo * fhi > 0.0) {
        std::ostringstream msg;
        msg << "solve_flux_for_lm: target " << target_lm
            << " H is not bracketed on [" << phi_lo << ", " << phi_hi << "] Phi_0";
        throw SynthesisError(msg.str());
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = l_m(s, mid) - target_lm;
        if (fm == 0.0) return mid;
        if (flo * fm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

FluxOperatingPoint solve_operating_fluxes(const SquidParams& s,
                                          const coupler::CoupledLineParams& base,
                                          double omega_op,
                                          double l_m_on, double l_m_off) {
    // l_m is strictly decreasing on [0, 1/2] Phi_0 (cos decreasing, the
    // composition monotone for beta_l < 1), so each target has one root.
    FluxOperatingPoint op;
    op.phi_on = solve_flux_for_lm(s, l_m_on, 0.0, 0.5);
    op.phi_off = solve_flux_for_lm(s, l_m_off, 0.0, 0.5);
    if (!(op.phi_on < op.phi_off)) {
        throw SynthesisError("solve_operating_fluxes: expected phi_on < phi_off "
                             "(L_m-On above L_m-Off)");
    }
    op.k0 = k_of_flux(s, base, omega_op, op.phi_on);
    if (!(op.k0 > 0.0)) {
        throw SynthesisError("solve_operating_fluxes: K(phi_on) must be positive "
                             "(On-state convention)");
    }
    return op;
}

FluxWaveform flux_waveform(const SquidParams& s, const coupler::CoupledLineParams& base,
                           double omega_op, double omega_m, double phase,
                           int n_samples, const FluxOperatingPoint& op) {
    if (n_samples < 2) throw ConfigError("flux_waveform: need at least two samples");

    // Validate monotonicity of K(phi) over the synthesis interval.
    const int probes = 64;
    double prev = k_of_flux(s, base, omega_op, op.phi_on);
    for (int i = 1; i <= probes; ++i) {
        const double phi = op.phi_on + (op.phi_off - op.phi_on) * i / probes;
        const double k = k_of_flux(s, base, omega_op, phi);
        if (!(k < prev)) {
            throw SynthesisError("flux_waveform: K(phi) is not strictly monotone on "
                                 "[phi_on, phi_off]");
        }
        prev = k;
    }

    const double k0 = op.k0;
    const double k_tol = 1e-6 * k0;
    const double period = 2.0 * pi / omega_m;

    FluxWaveform wf;
    wf.omega_m = omega_m;
    wf.phase = phase;
    wf.t_s.resize(n_samples);
    wf.phi.resize(n_samples);

    for (int i = 0; i < n_samples; ++i) {
        const double t = period * i / (n_samples - 1);
        const double target = k0 * std::cos(omega_m * t + phase);
        double lo = op.phi_on, hi = op.phi_off;  // K decreasing: K(lo)=+K0, K(hi)=-K0
        double phi_mid = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
            phi_mid = 0.5 * (lo + hi);
            const double k = k_of_flux(s, base, omega_op, phi_mid);
            if (std::abs(k - target) <= k_tol) break;
            if (k > target) {
                lo = phi_mid;
            } else {
                hi = phi_mid;
            }
        }
        // Clamp the exact extremes so the endpoints land on the solved fluxes.
        if (target >= k0) phi_mid = op.phi_on;
        if (target <= -k0) phi_mid = op.phi_off;
        wf.t_s[i] = t;
        wf.phi[i] = phi_mid;
    }
    return wf;
}

}  // namespace crlhsim::squid
