#pragma once

// Shared fixtures and test-only oracles. Nothing here calls into the code under test.

#include <cmath>
#include <numbers>
#include <random>

#include "gacal/constitutive.hpp"

namespace gacal::testing {

/// Hochstetten sand, von Wolffersdorff column, with e_d0 = 0.55 < e_c0 = 0.95 < e_i0 = 1.05.
inline SHParameters wolffersdorff() {
    return SHParameters::from_vector({33.0, 1000.0, 0.25, 0.95, 0.25, 1.5, 0.55 / 0.95, 1.05 / 0.95});
}

/// Parameters reported by the GA-cal calibration of the same sand.
inline ParameterVector gacal_column() {
    return {33.52, 2220.0, 0.22, 1.03, 0.21, 1.12, 0.58 / 1.03, 1.16 / 1.03};
}

inline bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max({1.0e-300, std::abs(a), std::abs(b)});
}

/// Random parameters in the usual Hochstetten search ranges.
inline SHParameters random_parameters(std::mt19937_64& g) {
    auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); };
    return SHParameters::from_vector({u(28, 38), u(500, 5000), u(0.15, 0.45), u(0.8, 1.2),
                                      u(0.05, 0.5), u(0.5, 2.5), u(0.52, 0.65), u(1.05, 1.3)});
}

/// Oracle for the Bauer limits, written independently from the library.
inline std::array<double, 3> oracle_limits(const SHParameters& p, double trT) {
    const double f = std::exp(-std::pow(-trT / p.h_s, p.n));
    return {p.lambda_d * p.e_c0 * f, p.e_c0 * f, p.lambda_i * p.e_c0 * f};
}

/// Random admissible triaxial-compression state (T1 <= T2 < 0, e_d <= e <= e_i).
inline SoilState random_state(std::mt19937_64& g, const SHParameters& p, double max_ratio) {
    auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); };
    const double T2 = -u(0.02, 0.6);
    const double T1 = T2 * u(1.0, max_ratio);
    const auto lims = oracle_limits(p, T1 + 2 * T2);
    return {T1, T2, u(lims[0], lims[2])};
}

}  // namespace gacal::testing
