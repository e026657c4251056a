#pragma once

#include <span>
#include <vector>

#include "crlhsim/netalg.hpp"
#include "crlhsim/types.hpp"

namespace crlhsim::crlh {

/// Lumped element values of one CRLH unit cell. dl_r is the small additive
/// series-inductance shift used to detune one line of a coupler.
struct CrlhCellParams {
    double l_r;             // series inductance, H
    double c_r;             // shunt capacitance, F
    double l_l;             // shunt inductance, H
    double c_l;             // series capacitance, F
    double pitch = 300e-6;  // cell pitch, m
    double dl_r = 0.0;      // additive L_R shift, H

    double series_l() const { return l_r + dl_r; }
    void validate() const;
};

enum class Band { left_handed, right_handed, gap };

const char* band_name(Band b);

/// One point of the Bloch dispersion. beta/alpha are the principal-branch
/// propagation and attenuation constants in rad/m; in-band points have
/// alpha = 0 and 0 <= beta*pitch <= pi.
struct DispersionPoint {
    double frequency_hz = 0.0;
    double beta = 0.0;   // rad/m, principal branch (>= 0)
    double alpha = 0.0;  // rad/m
    bool evanescent = false;
    Band band = Band::gap;
    double pitch = 300e-6;

    double beta_cell() const { return beta * pitch; }
    double alpha_cell() const { return alpha * pitch; }

    /// beta with the forward-power sign convention: negative phase velocity
    /// in the left-handed band.
    double signed_beta() const { return band == Band::left_handed ? -beta : beta; }
    double signed_beta_cell() const { return signed_beta() * pitch; }
};

struct CharacteristicImpedance {
    Complex z0;      // principal root, Re >= 0
    bool stopband;   // purely imaginary result
};

Complex series_impedance(const CrlhCellParams& cell, double omega);
Complex shunt_admittance(const CrlhCellParams& cell, double omega);

/// Bloch dispersion of the periodic lattice: beta*p = arccos(1 + ZY/2),
/// principal branch; |1 + ZY/2| > 1 is flagged evanescent with the complex
/// arccos supplying the attenuation constant.
DispersionPoint propagation_constant(const CrlhCellParams& cell, double omega);

/// Z0 = sqrt(Z/Y), principal square root with non-negative real part.
/// Throws DivergenceError exactly at the shunt resonance (Y = 0).
CharacteristicImpedance characteristic_impedance(const CrlhCellParams& cell, double omega);

/// Symmetric-form unit-cell chain matrix: A = D = 1 + ZY/2, B = Z + Z^2 Y/4,
/// C = Y.
netalg::AbcdMatrix cell_abcd(const CrlhCellParams& cell, double omega);

/// Chain matrix of n cascaded cells.
netalg::AbcdMatrix line_abcd(const CrlhCellParams& cell, double omega, int cells);

/// Chain matrix of a homogeneous line of length l with the given beta (rad/m)
/// and characteristic impedance. Accepts non-integer effective cell counts
/// via l = x * pitch.
netalg::AbcdMatrix homogeneous_abcd(double beta, Complex z0, double length);

/// Per-frequency S-parameters of an n-cell line terminated in zc.
std::vector<netalg::TwoPortScattering> line_spectrum(const CrlhCellParams& cell,
                                                     std::span<const double> frequencies_hz,
                                                     int cells, Complex zc);

/// Closed-form roots of Z(w) = 0 and Y(w) = 0.
double series_resonance_hz(const CrlhCellParams& cell);
double shunt_resonance_hz(const CrlhCellParams& cell);

}  // namespace crlhsim::crlh
