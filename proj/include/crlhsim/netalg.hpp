#pragma once

#include <array>

#include "crlhsim/types.hpp"

namespace crlhsim::netalg {

/// Chain (transfer) matrix of a two-port. b carries ohms, c siemens,
/// a and d are dimensionless. For a lossless reciprocal reactive cell
/// a*d - b*c = 1 with a, d real and b, c imaginary.
struct AbcdMatrix {
    Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static AbcdMatrix identity() { return {}; }

    Complex det() const { return a * d - b * c; }

    AbcdMatrix operator*(const AbcdMatrix& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    double max_abs() const;
};

/// Two-port scattering matrix with the termination impedance it was
/// referenced to and the evaluation frequency.
struct TwoPortScattering {
    Complex s11, s12, s21, s22;
    Complex z_ref_port1{50.0}, z_ref_port2{50.0};
    double frequency_hz = 0.0;
};

/// Four-port scattering matrix partitioned into left-subgroup (ports L1, L2)
/// and right-subgroup (ports R1, R2) 2x2 blocks.
struct FourPortScattering {
    Mat2 ll, lr, rl, rr;
    std::array<std::string, 4> port_labels{"L1", "L2", "R1", "R2"};
    double frequency_hz = 0.0;

    using Mat4 = std::array<std::array<Complex, 4>, 4>;

    Mat4 to_matrix() const;
    static FourPortScattering from_matrix(const Mat4& m, double frequency_hz = 0.0);
};

/// S-parameters of an ABCD two-port terminated on both sides by zc.
/// Throws SingularConversionError when the denominator
/// E = A + B/zc + C*zc + D degenerates.
TwoPortScattering abcd_to_s(const AbcdMatrix& m, Complex zc, double frequency_hz = 0.0);

/// n-fold chain product; n = 0 gives the identity.
AbcdMatrix abcd_pow(const AbcdMatrix& m, int n);

/// Condition-number threshold above which interconnect() treats the
/// junction as resonant and refuses to silently blow up.
inline constexpr double interconnect_condition_limit = 1e12;

/// Joins right-subgroup ports of `left` to left-subgroup ports of `right`,
/// eliminating the internal waves exactly. Throws ResonantJunctionError when
/// (I - S_LL^(right) S_RR^(left)) is conditioned worse than the limit.
FourPortScattering interconnect(const FourPortScattering& left,
                                const FourPortScattering& right);

}  // namespace crlhsim::netalg
