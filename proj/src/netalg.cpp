#include "crlhsim/netalg.hpp"

#include <sstream>

namespace crlhsim::netalg {

double AbcdMatrix::max_abs() const {
    return std::max(std::max(std::abs(a), std::abs(b)),
                    std::max(std::abs(c), std::abs(d)));
}

FourPortScattering::Mat4 FourPortScattering::to_matrix() const {
    Mat4 m{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m[i][j] = ll(i, j);
            m[i][j + 2] = lr(i, j);
            m[i + 2][j] = rl(i, j);
            m[i + 2][j + 2] = rr(i, j);
        }
    }
    return m;
}

FourPortScattering FourPortScattering::from_matrix(const Mat4& m, double frequency_hz) {
    FourPortScattering s;
    s.frequency_hz = frequency_hz;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            s.ll(i, j) = m[i][j];
            s.lr(i, j) = m[i][j + 2];
            s.rl(i, j) = m[i + 2][j];
            s.rr(i, j) = m[i + 2][j + 2];
        }
    }
    return s;
}

TwoPortScattering abcd_to_s(const AbcdMatrix& m, Complex zc, double frequency_hz) {
    if (!(zc.real() > 0.0)) {
        throw ConfigError("abcd_to_s: reference impedance must have positive real part");
    }
    const Complex e = m.a + m.b / zc + m.c * zc + m.d;
    const double scale = std::abs(m.a) + std::abs(m.b / zc) + std::abs(m.c * zc) + std::abs(m.d);
    if (std::abs(e) <= 1e-12 * scale) {
        std::ostringstream msg;
        msg << "abcd_to_s: singular conversion (E ~ 0) at " << frequency_hz << " Hz";
        throw SingularConversionError(msg.str(), frequency_hz);
    }
    TwoPortScattering s;
    s.s11 = (m.a + m.b / zc - m.c * zc - m.d) / e;
    s.s12 = 2.0 * (m.a * m.d - m.b * m.c) / e;
    s.s21 = 2.0 / e;
    s.s22 = (-m.a + m.b / zc - m.c * zc + m.d) / e;
    s.z_ref_port1 = zc;
    s.z_ref_port2 = zc;
    s.frequency_hz = frequency_hz;
    return s;
}

AbcdMatrix abcd_pow(const AbcdMatrix& m, int n) {
    if (n < 0) throw ConfigError("abcd_pow: cell count must be non-negative");
    AbcdMatrix r = AbcdMatrix::identity();
    for (int i = 0; i < n; ++i) r = r * m;
    return r;
}

namespace {

Mat2 checked_inverse(const Mat2& m, double frequency_hz) {
    const double cond = m.cond2();
    if (!(cond < interconnect_condition_limit)) {
        std::ostringstream msg;
        msg << "interconnect: resonant junction at " << frequency_hz
            << " Hz (condition number " << cond << ")";
        throw ResonantJunctionError(msg.str(), cond);
    }
    return m.inverse();
}

}  // namespace

FourPortScattering interconnect(const FourPortScattering& left,
                                const FourPortScattering& right) {
    const Mat2 eye = Mat2::identity();
    // Waves bouncing between the joined faces: right.ll sees left.rr and
    // vice versa. Both orderings appear in the recursion.
    const Mat2 inv_lr = checked_inverse(eye - right.ll * left.rr, left.frequency_hz);
    const Mat2 inv_rl = checked_inverse(eye - left.rr * right.ll, left.frequency_hz);

    FourPortScattering out;
    out.ll = left.ll + left.lr * inv_lr * right.ll * left.rl;
    out.lr = left.lr * inv_lr * right.lr;
    out.rl = right.rl * inv_rl * left.rl;
    out.rr = right.rr + right.rl * inv_rl * left.rr * right.lr;
    out.frequency_hz = left.frequency_hz;
    out.port_labels = {left.port_labels[0], left.port_labels[1],
                       right.port_labels[2], right.port_labels[3]};
    return out;
}

}  // namespace crlhsim::netalg
