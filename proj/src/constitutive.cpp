#include "gacal/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gacal/errors.hpp"

namespace gacal {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kClosureTolerance = 1e-10;

double closure_residual(const FlowCoefficients& c, double fd, double D2) {
    return -c.L21 + c.L22 * D2 + fd * c.N2 * std::sqrt(1.0 + 2.0 * D2 * D2);
}

double closure_scale(const FlowCoefficients& c, double fd, double D2) {
    return std::abs(c.L21) + std::abs(c.L22 * D2) +
           std::abs(fd * c.N2) * std::sqrt(1.0 + 2.0 * D2 * D2);
}

// Newton on the unsquared closure; only refines an already close root.
double polish_root(const FlowCoefficients& c, double fd, double D2) {
    for (int it = 0; it < 3; ++it) {
        const double norm = std::sqrt(1.0 + 2.0 * D2 * D2);
        const double g = closure_residual(c, fd, D2);
        const double dg = c.L22 + fd * c.N2 * 2.0 * D2 / norm;
        if (dg == 0.0 || !std::isfinite(dg)) break;
        const double next = D2 - g / dg;
        if (!std::isfinite(next)) break;
        if (std::abs(closure_residual(c, fd, next)) > std::abs(g)) break;
        D2 = next;
    }
    return D2;
}

// Roots of A x^2 + B x + C = 0; empty when there is no real root.
std::vector<double> real_roots(double A, double B, double C) {
    const double scale = std::abs(A) + std::abs(B) + std::abs(C);
    if (std::abs(A) <= 1e-14 * scale) {
        if (B == 0.0) return {};
        return {-C / B};
    }
    double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) {
        // round-off on a tangent root
        if (disc < -1e-12 * (B * B + std::abs(4.0 * A * C))) return {};
        disc = 0.0;
    }
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (B + std::copysign(sq, B));
    std::vector<double> roots;
    roots.push_back(q / A);
    if (q != 0.0) roots.push_back(C / q);
    return roots;
}

}  // namespace

SHParameters SHParameters::from_vector(const ParameterVector& v) noexcept {
    return SHParameters{v[0] * kDegToRad, v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

ParameterVector SHParameters::to_vector() const noexcept {
    return {phi_c / kDegToRad, h_s, n, e_c0, alpha, beta, lambda_d, lambda_i};
}

void SHParameters::validate() const {
    auto fail = [](const std::string& what) { throw ParameterDomainError(what); };
    if (!(phi_c > 0.0 && phi_c < std::numbers::pi / 2)) fail("phi_c must lie in (0, 90) deg");
    if (!(h_s > 0.0)) fail("h_s must be positive");
    if (!(n > 0.0 && n < 1.0)) fail("n must lie in (0, 1)");
    if (!(e_c0 > 0.0)) fail("e_c0 must be positive");
    if (!(alpha > 0.0)) fail("alpha must be positive");
    if (!(beta >= 0.0)) fail("beta must be non-negative");
    if (!(lambda_d > 0.0 && lambda_d < 1.0)) fail("lambda_d must lie in (0, 1)");
    if (!(lambda_i > 1.0)) fail("lambda_i must exceed 1");
}

double barotropy_a(double phi_c) {
    if (!(phi_c > 0.0 && phi_c < std::numbers::pi / 2))
        throw ParameterDomainError("barotropy_a: phi_c must lie in (0, pi/2)");
    const double s = std::sin(phi_c);
    return std::numbers::sqrt3 * (3.0 - s) / (2.0 * std::numbers::sqrt2 * s);
}

VoidRatioLimits void_ratio_limits(const SHParameters& p, double trT) {
    if (!(trT < 0.0)) throw AdmissibilityError("void_ratio_limits: Tr(T) must be negative");
    const double factor = std::exp(-std::pow(-trT / p.h_s, p.n));
    return {p.e_d0() * factor, p.e_c0 * factor, p.e_i0() * factor};
}

double pyknotropy_fd(double e, const VoidRatioLimits& lims, double alpha) {
    if (e < lims.e_d) throw AdmissibilityError("pyknotropy_fd: void ratio below e_d");
    if (e == lims.e_c) return 1.0;
    return std::pow((e - lims.e_d) / (lims.e_c - lims.e_d), alpha);
}

double stiffness_fs(const SHParameters& p, const SoilState& s) {
    const double trT = s.trace();
    const VoidRatioLimits lims = void_ratio_limits(p, trT);
    const double a = barotropy_a(p.phi_c);
    const double ratio = (p.e_i0() - p.e_d0()) / (p.e_c0 - p.e_d0());
    const double denom = 3.0 + a * a - a * std::numbers::sqrt3 * std::pow(ratio, p.alpha);
    if (!(denom > 0.0)) throw ParameterDomainError("stiffness_fs: non-positive denominator");
    const double density = p.beta == 0.0 ? 1.0 : std::pow(lims.e_i / s.e, p.beta);
    return (p.h_s / p.n) * ((1.0 + lims.e_i) / lims.e_i) * density *
           std::pow(-trT / p.h_s, 1.0 - p.n) / denom;
}

FlowCoefficients flow_coefficients(double a, const SoilState& s) {
    const double T1 = s.T1;
    const double T2 = s.T2;
    const double trT = s.trace();
    const double trT2 = T1 * T1 + 2.0 * T2 * T2;
    if (!(trT2 > 0.0)) throw AdmissibilityError("flow_coefficients: zero stress tensor");
    const double a2 = a * a;
    const double tr_sq = trT * trT;
    FlowCoefficients c;
    c.L11 = tr_sq / trT2 * (1.0 + a2 * T1 * T1 / tr_sq);
    c.L12 = 2.0 * a2 * T1 * T2 / trT2;
    c.L21 = a2 * T1 * T2 / trT2;
    c.L22 = tr_sq / trT2 * (1.0 + 2.0 * a2 * T2 * T2 / tr_sq);
    c.N1 = trT / trT2 * a / 3.0 * (5.0 * T1 - 2.0 * T2);
    c.N2 = trT / trT2 * a / 3.0 * (4.0 * T2 - T1);
    return c;
}

bool is_admissible(const SHParameters& p, const SoilState& s) noexcept {
    if (!std::isfinite(s.T1) || !std::isfinite(s.T2) || !std::isfinite(s.e)) return false;
    const double trT = s.trace();
    if (!(trT < 0.0)) return false;
    const double factor = std::exp(-std::pow(-trT / p.h_s, p.n));
    return s.e >= p.e_d0() * factor && s.e <= p.e_i0() * factor;
}

StateRate rate(const SHParameters& p, const SoilState& s, double D1, double D2) {
    const double a = barotropy_a(p.phi_c);
    const VoidRatioLimits lims = void_ratio_limits(p, s.trace());
    const double fs = stiffness_fs(p, s);
    const double fd = pyknotropy_fd(s.e, lims, p.alpha);
    const FlowCoefficients c = flow_coefficients(a, s);
    const double norm = std::sqrt(D1 * D1 + 2.0 * D2 * D2);
    return {fs * (c.L11 * D1 + c.L12 * D2 + fd * c.N1 * norm),
            fs * (c.L21 * D1 + c.L22 * D2 + fd * c.N2 * norm),
            (1.0 + s.e) * (D1 + 2.0 * D2)};
}

StateRate rate_oe(const SHParameters& p, const SoilState& s, double D1) {
    return rate(p, s, D1, 0.0);
}

TriaxialRate rate_td(const SHParameters& p, const SoilState& s, double D1,
                     std::optional<double> previous_D2) {
    if (!(D1 < 0.0)) throw ParameterDomainError("rate_td: axial stretching must be compressive");
    const double a = barotropy_a(p.phi_c);
    const VoidRatioLimits lims = void_ratio_limits(p, s.trace());
    const double fd = pyknotropy_fd(s.e, lims, p.alpha);
    const FlowCoefficients c = flow_coefficients(a, s);

    // Solve in units of |D1| = 1 (degree-1 homogeneity), then rescale.
    const double k = fd * c.N2;
    const double A = c.L22 * c.L22 - 2.0 * k * k;
    const double B = -2.0 * c.L21 * c.L22;
    const double C = c.L21 * c.L21 - k * k;

    std::vector<double> valid;
    for (double root : real_roots(A, B, C)) {
        root = polish_root(c, fd, root);
        if (std::abs(closure_residual(c, fd, root)) <=
            kClosureTolerance * closure_scale(c, fd, root))
            valid.push_back(root);
    }
    if (valid.empty()) throw InfeasibleError("rate_td: triaxial closure has no real root");

    double chosen = valid.front();
    if (valid.size() > 1) {
        const double scale = std::abs(D1);
        auto distance = [&](double r) {
            return previous_D2 ? std::abs(r - *previous_D2 / scale) : std::abs(r);
        };
        chosen = *std::min_element(valid.begin(), valid.end(),
                                   [&](double x, double y) { return distance(x) < distance(y); });
    }
    const double D2 = std::abs(D1) * chosen;
    return {rate(p, s, D1, D2), D2};
}

}  // namespace gacal
