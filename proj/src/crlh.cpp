#include "crlhsim/crlh.hpp"

#include <sstream>

namespace crlhsim::crlh {

void CrlhCellParams::validate() const {
    const auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) {
            throw ConfigError(std::string("cell.") + name + " must be strictly positive");
        }
    };
    positive(l_r, "l_r");
    positive(c_r, "c_r");
    positive(l_l, "l_l");
    positive(c_l, "c_l");
    positive(pitch, "pitch");
    if (!(std::abs(dl_r) < l_r)) {
        throw ConfigError("cell.dl_r: |L_R shift| must be smaller than L_R");
    }
}

const char* band_name(Band b) {
    switch (b) {
        case Band::left_handed: return "left_handed";
        case Band::right_handed: return "right_handed";
        case Band::gap: return "gap";
    }
    return "?";
}

Complex series_impedance(const CrlhCellParams& cell, double omega) {
    if (!(omega > 0.0)) throw ConfigError("series_impedance: omega must be positive");
    return Complex(0.0, omega * cell.series_l() - 1.0 / (omega * cell.c_l));
}

Complex shunt_admittance(const CrlhCellParams& cell, double omega) {
    if (!(omega > 0.0)) throw ConfigError("shunt_admittance: omega must be positive");
    return Complex(0.0, omega * cell.c_r - 1.0 / (omega * cell.l_l));
}

DispersionPoint propagation_constant(const CrlhCellParams& cell, double omega) {
    const double zi = series_impedance(cell, omega).imag();
    const double yi = shunt_admittance(cell, omega).imag();
    // Z*Y = (j zi)(j yi) = -zi*yi: the arccos argument is real for a
    // lossless cell.
    const double arg = 1.0 - zi * yi / 2.0;

    DispersionPoint pt;
    pt.frequency_hz = omega / (2.0 * pi);
    pt.pitch = cell.pitch;
    if (std::abs(arg) <= 1.0) {
        pt.beta = std::acos(arg) / cell.pitch;
        pt.alpha = 0.0;
        pt.evanescent = false;
        // In band both zi and yi share a sign; zi < 0 is the backward-wave
        // (left-handed) branch. zi == 0 sits at the series resonance, the
        // lower edge of the right-handed band.
        pt.band = zi < 0.0 ? Band::left_handed : Band::right_handed;
    } else {
        const Complex w = std::acos(Complex(arg, 0.0));
        pt.beta = w.real() / cell.pitch;  // 0 or pi per cell
        pt.alpha = std::abs(w.imag()) / cell.pitch;
        pt.evanescent = true;
        pt.band = Band::gap;
    }
    return pt;
}

CharacteristicImpedance characteristic_impedance(const CrlhCellParams& cell, double omega) {
    const Complex z = series_impedance(cell, omega);
    const Complex y = shunt_admittance(cell, omega);
    if (y == Complex(0.0, 0.0)) {
        std::ostringstream msg;
        msg << "characteristic_impedance: pole at shunt resonance ("
            << omega / (2.0 * pi) << " Hz)";
        throw DivergenceError(msg.str());
    }
    Complex z0 = std::sqrt(z / y);
    if (z0.real() < 0.0) z0 = -z0;
    if (z0.real() == 0.0 && z0.imag() < 0.0) z0 = -z0;
    const bool stopband = std::abs(z0.real()) <= 1e-12 * std::abs(z0);
    return {z0, stopband};
}

netalg::AbcdMatrix cell_abcd(const CrlhCellParams& cell, double omega) {
    const Complex z = series_impedance(cell, omega);
    const Complex y = shunt_admittance(cell, omega);
    const Complex a = 1.0 + z * y / 2.0;
    return {a, z + z * z * y / 4.0, y, a};
}

netalg::AbcdMatrix line_abcd(const CrlhCellParams& cell, double omega, int cells) {
    return netalg::abcd_pow(cell_abcd(cell, omega), cells);
}

netalg::AbcdMatrix homogeneous_abcd(double beta, Complex z0, double length) {
    if (length < 0.0) throw ConfigError("homogeneous_abcd: length must be non-negative");
    const double bl = beta * length;
    const Complex j(0.0, 1.0);
    return {std::cos(bl), j * z0 * std::sin(bl), j * std::sin(bl) / z0, std::cos(bl)};
}

std::vector<netalg::TwoPortScattering> line_spectrum(const CrlhCellParams& cell,
                                                     std::span<const double> frequencies_hz,
                                                     int cells, Complex zc) {
    if (frequencies_hz.empty()) throw ConfigError("line_spectrum: empty frequency grid");
    for (size_t i = 1; i < frequencies_hz.size(); ++i) {
        if (!(frequencies_hz[i] > frequencies_hz[i - 1])) {
            throw ConfigError("line_spectrum: frequency grid must ascend");
        }
    }
    std::vector<netalg::TwoPortScattering> out;
    out.reserve(frequencies_hz.size());
    for (double f : frequencies_hz) {
        const double omega = 2.0 * pi * f;
        out.push_back(netalg::abcd_to_s(line_abcd(cell, omega, cells), zc, f));
    }
    return out;
}

double series_resonance_hz(const CrlhCellParams& cell) {
    return 1.0 / (2.0 * pi * std::sqrt(cell.series_l() * cell.c_l));
}

double shunt_resonance_hz(const CrlhCellParams& cell) {
    return 1.0 / (2.0 * pi * std::sqrt(cell.c_r * cell.l_l));
}

}  // namespace crlhsim::crlh
