#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace crlhsim {

using Complex = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration or parameter set (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Solver/numerical failure (CLI exit code 3).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// ABCD->S conversion hit a vanishing denominator at some frequency.
class SingularConversionError : public NumericalError {
public:
    SingularConversionError(const std::string& msg, double frequency_hz)
        : NumericalError(msg), frequency_hz(frequency_hz) {}
    double frequency_hz;
};

/// Four-port interconnection junction is (near-)resonant: the internal
/// 2x2 solve is ill-conditioned beyond the acceptance threshold.
class ResonantJunctionError : public NumericalError {
public:
    ResonantJunctionError(const std::string& msg, double condition_number)
        : NumericalError(msg), condition_number(condition_number) {}
    double condition_number;
};

/// A guided-mode quantity was requested at a frequency where the mode is
/// evanescent (inside a stopband).
class OutOfBandError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Flux-waveform synthesis failed (non-monotone K(Phi) on the interval).
class SynthesisError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Exact pole of a closed-form expression (divergence point).
class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// An operation was called outside its contract (e.g. symmetric-only op on
/// an asymmetric coupled line).
class MisuseError : public Error {
public:
    using Error::Error;
};

/// Dense complex 2x2 matrix. Small enough that everything is inline and
/// by value; used for mode matrices and four-port blocks.
struct Mat2 {
    Complex e[2][2]{{0.0, 0.0}, {0.0, 0.0}};

    static Mat2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
    static Mat2 zero() { return {}; }
    static Mat2 diag(Complex a, Complex b) { return {{{a, 0.0}, {0.0, b}}}; }

    Complex& operator()(int r, int c) { return e[r][c]; }
    const Complex& operator()(int r, int c) const { return e[r][c]; }

    Mat2 operator+(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.e[i][j] = e[i][j] + o.e[i][j];
        return r;
    }
    Mat2 operator-(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.e[i][j] = e[i][j] - o.e[i][j];
        return r;
    }
    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.e[i][j] = e[i][0] * o.e[0][j] + e[i][1] * o.e[1][j];
        return r;
    }
    Mat2 operator*(Complex s) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.e[i][j] = e[i][j] * s;
        return r;
    }

    Complex det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }

    Mat2 transpose() const { return {{{e[0][0], e[1][0]}, {e[0][1], e[1][1]}}}; }

    Mat2 inverse() const {
        const Complex d = det();
        if (std::abs(d) == 0.0) throw NumericalError("Mat2::inverse: singular matrix");
        const Complex s = 1.0 / d;
        return {{{e[1][1] * s, -e[0][1] * s}, {-e[1][0] * s, e[0][0] * s}}};
    }

    double frobenius() const {
        double s = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s += std::norm(e[i][j]);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(e[i][j]));
        return m;
    }

    /// 2-norm condition number via the closed-form singular values.
    double cond2() const {
        const double t = std::norm(e[0][0]) + std::norm(e[0][1]) +
                         std::norm(e[1][0]) + std::norm(e[1][1]);
        const double d2 = std::norm(det());
        const double disc = std::sqrt(std::max(t * t - 4.0 * d2, 0.0));
        const double smax2 = (t + disc) / 2.0;
        const double smin2 = (t - disc) / 2.0;
        if (smin2 <= 0.0) return std::numeric_limits<double>::infinity();
        return std::sqrt(smax2 / smin2);
    }
};

inline Mat2 operator*(Complex s, const Mat2& m) { return m * s; }

/// 20*log10(|x|) clamped at -200 dB (covers exact zeros).
inline double to_db(Complex x) {
    const double a = std::abs(x);
    if (a == 0.0) return -200.0;
    return std::max(20.0 * std::log10(a), -200.0);
}

}  // namespace crlhsim
