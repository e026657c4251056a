#pragma once

#include <vector>

#include "crlhsim/coupler.hpp"

namespace crlhsim::squid {

/// Magnetic flux quantum, Wb.
inline constexpr double flux_quantum = 2.067833848e-15;

/// rf-SQUID geometry and junction values. The loop inductance is
/// L_G = 2 L_S + 2 L_B; the critical current follows from the screening
/// parameter beta_L = 2 pi I_c L_G / Phi_0.
struct SquidParams {
    double l_s;    // shared branch inductance, H
    double l_p;    // residual series inductance, H
    double l_b;    // loop branch inductance, H
    double l_dir;  // direct (flux-independent) mutual inductance, H
    double beta_l; // screening parameter, dimensionless

    double l_g() const { return 2.0 * (l_s + l_b); }
    double critical_current() const { return beta_l * flux_quantum / (2.0 * pi * l_g()); }

    /// beta_l in (0,1) and L_S + L_P consistent with the coupled line's L_R.
    void validate(double line_l_r) const;
};

/// Effective SQUID inductance at flux phi (in units of Phi_0):
/// L_G (1 + beta_L cos(2 pi phi)) / (beta_L cos(2 pi phi)). Phi_0-periodic,
/// may be negative. Throws DivergenceError at the cosine zeros.
double l_rf(const SquidParams& s, double phi);

/// Flux-tunable mutual inductance L_dir + L_S^2 / L_rf(phi), computed in the
/// algebraically simplified form that removes the removable singularity at
/// the cosine zero (where it continuously takes the value L_dir).
double l_m(const SquidParams& s, double phi);

/// Coupling coefficient at flux phi: l_m(phi) substituted into the coupled
/// line, evaluated at omega_op. rad/m, signed (On positive).
double k_of_flux(const SquidParams& s, const coupler::CoupledLineParams& base,
                 double omega_op, double phi);

/// Flux samples over one modulation period realizing
/// K(t) = K0 cos(Omega_m t + phase).
struct FluxWaveform {
    std::vector<double> t_s;   // sample times, s
    std::vector<double> phi;   // flux, units of Phi_0
    double omega_m = 0.0;      // rad/s
    double phase = 0.0;        // rad
};

/// Operating flux interval solved from the L_m targets: K(phi_on) = +K0,
/// K(phi_off) = -K0.
struct FluxOperatingPoint {
    double phi_on;
    double phi_off;
    double k0;  // rad/m, positive
};

/// Solves l_m(phi) = target by bisection on [phi_lo, phi_hi] (l_m must be
/// monotone there; it is strictly decreasing on [0, 1/2]).
double solve_flux_for_lm(const SquidParams& s, double target_lm,
                         double phi_lo, double phi_hi);

/// Re-derives the operating fluxes from the configured L_m-On/Off targets.
FluxOperatingPoint solve_operating_fluxes(const SquidParams& s,
                                          const coupler::CoupledLineParams& base,
                                          double omega_op,
                                          double l_m_on, double l_m_off);

/// Synthesizes the flux waveform by bisection of K(phi) at each sample time;
/// K(phi) must be strictly monotone on [phi_on, phi_off] (validated by
/// sampling, SynthesisError otherwise). Round-trip tolerance 1e-6 * K0 in
/// K-space.
FluxWaveform flux_waveform(const SquidParams& s, const coupler::CoupledLineParams& base,
                           double omega_op, double omega_m, double phase,
                           int n_samples, const FluxOperatingPoint& op);

}  // namespace crlhsim::squid
