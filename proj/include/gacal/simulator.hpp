#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gacal/constitutive.hpp"

namespace gacal {

enum class TestKind { Oedometer, Triaxial };

/// One oedometric measurement: void ratio and vertical stress sigma_v = -T1 [MPa].
struct OePoint {
    double e = 0.0;
    double sigma_v = 0.0;
};

/// One triaxial measurement. Strains are fractions, compression positive; q in MPa.
struct TdPoint {
    double eps_a = 0.0;
    double eps_v = 0.0;
    double q = 0.0;
};

struct TestCase {
    TestKind kind = TestKind::Oedometer;
    int id = 0;
    SoilState initial;  ///< internal sign convention (compression negative)
    std::vector<OePoint> oe_data;
    std::vector<TdPoint> td_data;
    /// e_fin (smallest void ratio) for OE, eps_fin (largest axial strain) for TD.
    double terminal = 0.0;

    std::size_t point_count() const noexcept {
        return kind == TestKind::Oedometer ? oe_data.size() : td_data.size();
    }
};

/// Builds an OE test; e_fin is taken from the data. Throws InputDataError on empty data.
TestCase make_oe_test(int id, const SoilState& initial, std::vector<OePoint> data);
/// Builds a TD test; eps_fin is taken from the data. Throws InputDataError on empty data.
TestCase make_td_test(int id, const SoilState& initial, std::vector<TdPoint> data);

struct ResponseCurve {
    TestKind kind = TestKind::Oedometer;
    std::size_t n_step = 0;
    bool feasible = false;
    std::vector<double> time;
    std::vector<SoilState> states;
    std::vector<OePoint> oe;  ///< (e, sigma_v) per emitted state, OE only
    std::vector<TdPoint> td;  ///< (eps_a, eps_v, q) per emitted state, TD only

    /// Fraction of the n_step steps completed before the curve stopped.
    double reached_fraction() const noexcept {
        if (n_step == 0 || states.empty()) return 0.0;
        return static_cast<double>(states.size() - 1) / static_cast<double>(n_step);
    }
};

double integration_time_oe(double e0, double e_fin);
double integration_time_td(double eps_fin);

/// Explicit Euler over [0, t_f] with dt = t_f / n_step. An admissibility
/// violation stops the curve and clears `feasible`; it is not an error.
ResponseCurve integrate(const SHParameters& p, const TestCase& test, std::size_t n_step);

/// (eps_a, eps_v, q) along a TD integration driven with D1 = -1.
std::vector<TdPoint> elaborate_td(std::span<const SoilState> states, std::span<const double> times,
                                  double e0);

}  // namespace gacal
