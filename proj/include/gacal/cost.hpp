#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "gacal/constitutive.hpp"
#include "gacal/simulator.hpp"

namespace gacal {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Dimensionless comparison planes: (eps_E, T1) for OE, (eps_a, q) and (eps_a, eps_v) for TD.
enum class Plane : std::size_t { Oedometric = 0, Deviatoric = 1, Volumetric = 2 };

using Weights = std::array<double, 3>;
inline constexpr Weights kDefaultWeights = {1.0, 1.0, 1.0};

/// Cost assigned to a candidate whose simulation left the admissible domain.
inline constexpr double kInfeasiblePenalty = 1e6;

struct PlanePoints {
    Plane plane = Plane::Oedometric;
    int test_id = 0;
    std::vector<Point2> points;
};

/// Normalizers of one OE test, always taken from its experimental data.
struct OeScaling {
    double e0 = 0.0;
    double e_fin = 0.0;
    double T1_max_abs = 0.0;
};

/// Normalizers of one TD test, always taken from its experimental data.
struct TdScaling {
    double eps_fin = 0.0;
    double eps_v_max_abs = 0.0;
    double q_max = 0.0;
};

OeScaling oe_scaling(const TestCase& test);
TdScaling td_scaling(const TestCase& test);

PlanePoints scale_oe(std::span<const OePoint> points, const OeScaling& s, int test_id = 0);

struct TdPlanes {
    PlanePoints deviatoric;
    PlanePoints volumetric;
};

TdPlanes scale_td(std::span<const TdPoint> points, const TdScaling& s, int test_id = 0);

double point_segment_distance(Point2 a, Point2 p, Point2 q) noexcept;

/// Smallest distance from `a` to any segment of the polyline (at least two points).
double point_polyline_distance(Point2 a, std::span<const Point2> curve);

/// Sum over tests of ||d_j||_2 / n_j; zero for an empty plane.
double delta_plane(std::span<const std::vector<double>> per_test_distances);

struct CostBreakdown {
    std::array<double, 3> delta = {0.0, 0.0, 0.0};
    double total = 0.0;
    bool feasible = true;
};

/// Weighted sum when feasible, otherwise penalty * (1 + unreached_fraction).
double cost_total(const std::array<double, 3>& deltas, const Weights& weights, bool feasible,
                  double unreached_fraction = 0.0);

/// Simulates every test with one parameter vector (file units) and scores it.
CostBreakdown evaluate_candidate(const ParameterVector& candidate, std::span<const TestCase> tests,
                                 const Weights& weights, std::size_t n_step);

struct Evaluation {
    std::vector<CostBreakdown> costs;
    /// Class vector: row indices (0-based) by ascending cost, ties by lower index.
    std::vector<std::size_t> ranking;
};

/// Stable ascending argsort of costs.
std::vector<std::size_t> rank_costs(std::span<const double> totals);

/// Evaluates all candidates on up to `workers` threads (0 = hardware concurrency).
/// Results do not depend on the worker count.
Evaluation evaluate_population(std::span<const ParameterVector> population,
                               std::span<const TestCase> tests, const Weights& weights,
                               std::size_t n_step, std::size_t workers = 1);

}  // namespace gacal
