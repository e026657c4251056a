#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crlhsim/coupler.hpp"
#include "crlhsim/netalg.hpp"

namespace crlhsim::device {

enum class Termination { uncoupled_line_z0, fixed };

/// Uncoupled stage between the two couplers: common phase theta0 on the
/// shorter (up) arm, the differential length realizing delta_theta at the
/// operating frequency on the down arm. Cell counts may be non-integer
/// (homogeneous-line model) and can be overridden explicitly.
struct Stage2Spec {
    double theta0_cells = 2.0;
    double delta_theta = pi / 2.0;
    std::optional<double> cells_up_override;
    std::optional<double> cells_down_override;
};

/// Three-stage assembly. `coupled` carries the static-state mutual
/// inductance used for the coupler S-matrices (Off-state by default).
struct DeviceSpec {
    coupler::CoupledLineParams coupled;
    int n_c = 37;
    Stage2Spec stage2;
    double phi1 = 0.0;
    double phi2 = pi / 2.0;
    double omega_m = 2.0 * pi * 20e6;  // rad/s
    double omega_op = 2.0 * pi * 6e9;  // rad/s
    Termination termination = Termination::uncoupled_line_z0;
    double fixed_z_ohm = 50.0;

    void validate() const;

    /// Stage-II arm lengths in cells, resolved at omega_op so that the
    /// realized phase difference equals delta_theta there.
    double cells_up() const;
    double cells_down() const;

    /// Coupler termination impedance at omega per the termination mode.
    Complex reference_impedance(double omega) const;
};

/// 4x4 total scattering matrix with port numbering 1..4 (index 0..3):
/// ports 1/2 on the up line (left/right), 3/4 on the down line. Entries that
/// convert between the lines carry a +-Omega_m frequency-offset tag.
struct TotalScattering {
    std::array<std::array<Complex, 4>, 4> s{};
    std::array<std::array<double, 4>, 4> freq_offset_hz{};
    double frequency_hz = 0.0;

    double db(int row, int col) const { return to_db(s[row][col]); }
};

/// Ideal modulated 3-dB coupler matrix
/// (1/sqrt2) [[1, -j e^{-j phi}], [-j e^{j phi}, 1]].
Mat2 ideal_coupler_matrix(double phi);

/// Ideal three-stage forward/backward matrices,
/// M_fwd = M(phi2) M_b(dtheta) M(phi1) and the reversed cascade, with
/// M_b = diag(e^{j dtheta}, 1).
std::pair<Mat2, Mat2> ideal_total(double phi1, double dtheta, double phi2);

enum class PropagationDirection { forward, backward };
enum class ModeLabel { up, down };

struct BlochPoint {
    int step;
    double x, y, z;
    std::string stage;
};

/// Two-mode state evolution across the ideal three-stage device mapped to
/// Bloch coordinates (north pole = mode-up). Endpoints match ideal_total
/// applied to the input basis vector.
std::vector<BlochPoint> bloch_trajectory(PropagationDirection direction,
                                         ModeLabel input, double phi1,
                                         double dtheta, double phi2,
                                         int steps_per_stage);

/// Applies the modulation initial phase to a static coupler mode matrix:
/// upper-right entry times e^{-j phi}, lower-left times e^{+j phi}.
Mat2 modulated_coupler_s(const Mat2& static_m, double phi);

/// Stage-II diagonal mode matrix diag(S_up, S_down): matched-line
/// transmissions of the bare lines over the resolved arm lengths.
Mat2 stage2_s(const DeviceSpec& spec, double omega);

/// Total four-port scattering by the two-port cascade (reflections taken
/// from the single static coupler).
TotalScattering total_s_cascade(const DeviceSpec& spec, double omega);

/// Total four-port scattering by full-network interconnection of the three
/// stage four-ports (resolves inter-stage reflections exactly).
TotalScattering total_s_fullnetwork(const DeviceSpec& spec, double omega);

/// Total scattering with the closed-form coupled-mode coupler matrices
/// (homogeneous model, reflectionless). delta_l_r detunes the two lines by
/// -+delta; 0 gives the symmetric reference.
TotalScattering total_s_closedform(const DeviceSpec& spec, double delta_l_r,
                                   double omega);

struct IsolationMetrics {
    bool band_found = false;
    double bandwidth_hz = 0.0;
    double f_lo_hz = 0.0;
    double f_hi_hz = 0.0;
    double min_insertion_loss_db = 0.0;      // -max in-band |S21| dB
    double max_inband_reflection_db = -200.0; // max in-band |S11| dB
};

/// Isolation(f) = |S21|dB - |S12|dB. Bandwidth is the widest contiguous
/// interval with isolation >= threshold, edges located by linear
/// interpolation between grid points.
IsolationMetrics isolation_metrics(std::span<const TotalScattering> spectrum,
                                   double threshold_db);

}  // namespace crlhsim::device
