#pragma once

// Axisymmetric sand hypoplasticity (von Wolffersdorff) without the deviatoric
// factor F. Stresses in MPa, compression negative.

#include <array>
#include <optional>
#include <string_view>

namespace gacal {

inline constexpr std::size_t kParameterCount = 8;

/// Calibrated parameter vector in file units:
/// {phi_c [deg], h_s [MPa], n, e_c0, alpha, beta, lambda_d, lambda_i}.
using ParameterVector = std::array<double, kParameterCount>;

inline constexpr std::array<std::string_view, kParameterCount> kParameterNames = {
    "phi_c", "h_s", "n", "e_c0", "alpha", "beta", "lambda_d", "lambda_i"};
inline constexpr std::array<std::string_view, kParameterCount> kParameterUnits = {
    "deg", "MPa", "-", "-", "-", "-", "-", "-"};

struct SHParameters {
    double phi_c = 0.0;  ///< critical friction angle [rad]
    double h_s = 0.0;    ///< granular hardness [MPa]
    double n = 0.0;
    double e_c0 = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double lambda_d = 0.0;  ///< e_d0 / e_c0
    double lambda_i = 0.0;  ///< e_i0 / e_c0

    double e_d0() const noexcept { return lambda_d * e_c0; }
    double e_i0() const noexcept { return lambda_i * e_c0; }

    /// Converts from file units (degrees). Does not validate.
    static SHParameters from_vector(const ParameterVector& v) noexcept;
    ParameterVector to_vector() const noexcept;

    /// Throws ParameterDomainError unless
    /// 0 < phi_c < 90 deg, h_s > 0, 0 < n < 1, e_c0 > 0, alpha > 0, beta >= 0,
    /// 0 < lambda_d < 1 < lambda_i.
    void validate() const;
};

struct SoilState {
    double T1 = 0.0;  ///< axial effective stress [MPa]
    double T2 = 0.0;  ///< radial effective stress [MPa]
    double e = 0.0;   ///< void ratio

    double trace() const noexcept { return T1 + 2.0 * T2; }
};

struct StateRate {
    double dT1 = 0.0;
    double dT2 = 0.0;
    double de = 0.0;
};

struct VoidRatioLimits {
    double e_d = 0.0;
    double e_c = 0.0;
    double e_i = 0.0;
};

/// Axisymmetric reduction of the hypoplastic tensors: T_dot = f_s (L D + f_d N |D|).
struct FlowCoefficients {
    double L11 = 0.0, L12 = 0.0, L21 = 0.0, L22 = 0.0;
    double N1 = 0.0, N2 = 0.0;
};

double barotropy_a(double phi_c);

/// Bauer compression law: all three limits scale by exp[-(-trT/h_s)^n].
VoidRatioLimits void_ratio_limits(const SHParameters& p, double trT);

double pyknotropy_fd(double e, const VoidRatioLimits& lims, double alpha);

/// Stiffness factor f_s [MPa]. Throws ParameterDomainError when the
/// denominator 3 + a^2 - a sqrt(3) ((e_i0-e_d0)/(e_c0-e_d0))^alpha is not positive.
double stiffness_fs(const SHParameters& p, const SoilState& s);

FlowCoefficients flow_coefficients(double a, const SoilState& s);

/// True when Tr(T) < 0 and e_d(Tr T) <= e <= e_i(Tr T).
bool is_admissible(const SHParameters& p, const SoilState& s) noexcept;

/// General axisymmetric rate for a prescribed stretching (D1, D2).
StateRate rate(const SHParameters& p, const SoilState& s, double D1, double D2);

/// Oedometric kinematics: D = diag(D1, 0, 0), reference D1 = -1.
StateRate rate_oe(const SHParameters& p, const SoilState& s, double D1 = -1.0);

struct TriaxialRate {
    StateRate rate;
    double D2 = 0.0;  ///< radial stretching that keeps T2 constant
};

/// Drained triaxial kinematics at constant cell pressure. D2 solves
/// L21 D1 + L22 D2 + f_d N2 sqrt(D1^2 + 2 D2^2) = 0. When two roots are
/// valid, the one closest to `previous_D2` (scaled to the same D1) wins, or
/// the smaller |D2| without history. Throws InfeasibleError if no real root.
TriaxialRate rate_td(const SHParameters& p, const SoilState& s, double D1 = -1.0,
                     std::optional<double> previous_D2 = std::nullopt);

}  // namespace gacal
