#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they check.

#include <complex>
#include <random>
#include <vector>

#include "crlhsim/netalg.hpp"

namespace oracles {

using crlhsim::Complex;
using crlhsim::Mat2;
using crlhsim::netalg::AbcdMatrix;
using crlhsim::netalg::FourPortScattering;
using crlhsim::netalg::TwoPortScattering;

/// Standard S -> ABCD inverse map (reference impedance zc on both ports).
inline AbcdMatrix s_to_abcd(const TwoPortScattering& s, Complex zc) {
    const Complex den = 2.0 * s.s21;
    AbcdMatrix m;
    m.a = ((1.0 + s.s11) * (1.0 - s.s22) + s.s12 * s.s21) / den;
    m.b = zc * ((1.0 + s.s11) * (1.0 + s.s22) - s.s12 * s.s21) / den;
    m.c = ((1.0 - s.s11) * (1.0 - s.s22) - s.s12 * s.s21) / (zc * den);
    m.d = ((1.0 - s.s11) * (1.0 + s.s22) + s.s12 * s.s21) / den;
    return m;
}

/// Gaussian elimination with partial pivoting for small complex systems.
inline std::vector<Complex> solve_dense(std::vector<std::vector<Complex>> a,
                                        std::vector<Complex> b) {
    const size_t n = b.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (size_t r = col + 1; r < n; ++r) {
            const Complex f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Complex> x(n);
    for (size_t i = n; i-- > 0;) {
        Complex acc = b[i];
        for (size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
        x[i] = acc / a[i][i];
    }
    return x;
}

/// Brute-force composition of two four-ports: set up the incident/scattered
/// amplitudes at the joined faces, impose continuity, and solve the linear
/// wave system column by column.
inline FourPortScattering interconnect_bruteforce(const FourPortScattering& left,
                                                  const FourPortScattering& right) {
    FourPortScattering::Mat4 total{};
    for (int exc = 0; exc < 4; ++exc) {
        // External incident amplitudes (L1, L2 on the left network; R1, R2 on
        // the right one).
        const Complex aL[2] = {exc == 0 ? 1.0 : 0.0, exc == 1 ? 1.0 : 0.0};
        const Complex aR[2] = {exc == 2 ? 1.0 : 0.0, exc == 3 ? 1.0 : 0.0};

        // Unknowns: x = (ai1, ai2, ci1, ci2) with ai incident on the left
        // network's right face and ci incident on the right network's left
        // face. Continuity: ci = left-scattered at the face, ai = right-
        // scattered at the face:
        //   ai - S^r_LL ci = S^r_LR aR
        //   ci - S^l_RR ai = S^l_RL aL
        std::vector<std::vector<Complex>> m(4, std::vector<Complex>(4, 0.0));
        std::vector<Complex> rhs(4, 0.0);
        for (int i = 0; i < 2; ++i) {
            m[i][i] = 1.0;
            for (int j = 0; j < 2; ++j) m[i][2 + j] = -right.ll(i, j);
            rhs[i] = right.lr(i, 0) * aR[0] + right.lr(i, 1) * aR[1];
            m[2 + i][2 + i] = 1.0;
            for (int j = 0; j < 2; ++j) m[2 + i][j] = -left.rr(i, j);
            rhs[2 + i] = left.rl(i, 0) * aL[0] + left.rl(i, 1) * aL[1];
        }
        const auto x = solve_dense(m, rhs);
        const Complex ai[2] = {x[0], x[1]};
        const Complex ci[2] = {x[2], x[3]};

        for (int i = 0; i < 2; ++i) {
            total[i][exc] = left.ll(i, 0) * aL[0] + left.ll(i, 1) * aL[1] +
                            left.lr(i, 0) * ai[0] + left.lr(i, 1) * ai[1];
            total[2 + i][exc] = right.rl(i, 0) * ci[0] + right.rl(i, 1) * ci[1] +
                                right.rr(i, 0) * aR[0] + right.rr(i, 1) * aR[1];
        }
    }
    return FourPortScattering::from_matrix(total, left.frequency_hz);
}

/// Random strictly passive four-port (spectral norm below 0.9 via the
/// Frobenius bound).
inline FourPortScattering random_passive_fourport(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FourPortScattering::Mat4 m{};
    double fro = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            m[i][j] = Complex(u(rng), u(rng));
            fro += std::norm(m[i][j]);
        }
    }
    const double scale = 0.9 / std::sqrt(fro);
    for (auto& row : m) {
        for (auto& v : row) v *= scale;
    }
    return FourPortScattering::from_matrix(m);
}

inline double max_entry_diff(const FourPortScattering& a, const FourPortScattering& b) {
    const auto ma = a.to_matrix(), mb = b.to_matrix();
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(ma[i][j] - mb[i][j]));
    }
    return worst;
}

}  // namespace oracles
