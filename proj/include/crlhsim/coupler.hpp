#pragma once

#include <utility>

#include "crlhsim/crlh.hpp"
#include "crlhsim/netalg.hpp"

namespace crlhsim::coupler {

/// Cross-section of two coupled CRLH lines. line_up carries dl_r = -delta
/// and line_down +delta in the detuned configuration; l_m may be negative
/// (SQUID-mediated regime), c_m must be non-negative.
struct CoupledLineParams {
    crlh::CrlhCellParams line_up;
    crlh::CrlhCellParams line_down;
    double l_m = 0.0;  // mutual inductance, H
    double c_m = 0.0;  // mutual capacitance, F

    bool symmetric() const;
    void validate() const;

    static CoupledLineParams make_symmetric(const crlh::CrlhCellParams& cell,
                                            double l_m, double c_m);
    /// Symmetrically detuned pair: line_up gets -delta, line_down +delta.
    static CoupledLineParams make_detuned(const crlh::CrlhCellParams& cell,
                                          double l_m, double c_m, double delta_l_r);
};

/// Normal modes of the coupled pair. All wavenumbers are in rad/m with the
/// forward-power sign convention (negative in the left-handed band), so
/// differences carry physical signs: K(L_m-On) > 0, K(L_m-Off) < 0 for the
/// reference design.
struct NormalModes {
    double beta_c = 0.0;        // even-like mode
    double beta_pi = 0.0;       // odd-like mode
    double delta_beta_0 = 0.0;  // beta_down - beta_up of the uncoupled lines
    double delta_beta_c = 0.0;  // beta_c - beta_pi
    double k0 = 0.0;            // coupling coefficient
    double frequency_hz = 0.0;
    /// Set when |delta_beta_c| < |delta_beta_0| (K0 would be imaginary);
    /// such points are excluded from spectra.
    bool evanescent_coupling = false;
    /// Set when a normal mode came out complex (evanescent / lossy-looking);
    /// the beta fields then hold the real parts only.
    bool complex_modes = false;
};

/// Even/odd equivalent cells of a symmetric coupler: the even cell gains
/// L_R + 2 L_m, the odd cell C_R + 2 C_m. Throws MisuseError on an
/// asymmetric input (use c_pi_constants there).
std::pair<crlh::CrlhCellParams, crlh::CrlhCellParams> even_odd_cells(
    const CoupledLineParams& c);

/// Coupling coefficient. Symmetric pairs go through the even/odd
/// substituted-cell dispersion, K = (beta_even - beta_odd)/2; detuned pairs
/// through the c/pi normal modes with K0 = sqrt(dbc^2 - db0^2)/2.
/// Throws OutOfBandError when a mode is evanescent at omega.
NormalModes coupling_coefficient(const CoupledLineParams& c, double omega);

/// c/pi normal modes of the (possibly detuned) coupled pair from the
/// coupled-telegrapher eigenproblem, mapped through the unit-cell Bloch
/// relation so the symmetric case reduces exactly to the even/odd path.
NormalModes c_pi_constants(const CoupledLineParams& c, double omega);

/// Mode-basis scattering of an n-cell static coupler: the forward 2x2 block
/// plus the self (gamma) and cross (upsilon) reflections at one face.
struct CouplerScattering {
    Mat2 m;  // rows/cols ordered [up, down]: m(1,0) = M_down<-up etc.
    Complex gamma;
    Complex upsilon;
    Complex z_ref{50.0};
    double frequency_hz = 0.0;
};

/// Static symmetric coupler via the even/odd N-cell lattices terminated
/// in zc. M_uu = (S_BA_e + S_BA_o)/2, M_du = (S_BA_e - S_BA_o)/2,
/// Gamma/Upsilon likewise from the reflections.
CouplerScattering static_coupler_s(const CoupledLineParams& c, double omega,
                                   int cells, Complex zc);

/// Closed-form coupled-mode transfer matrix of a static (possibly detuned)
/// coupler of length l_c; exactly unitary. delta_beta_c = 0 degenerates to
/// the identity.
Mat2 asym_coupler_s_closedform(const NormalModes& modes, double coupling_length);

/// |K0| * n * pitch - pi/4: how far an n-cell section is from the 3-dB
/// quadrature length.
double three_db_length_residual(const NormalModes& modes, int cells, double pitch);

/// Reference impedance of the bare uncoupled line at omega (the coupler
/// termination the reference design uses). Throws OutOfBandError in a
/// stopband.
Complex uncoupled_line_z0(const CoupledLineParams& c, double omega);

}  // namespace crlhsim::coupler
