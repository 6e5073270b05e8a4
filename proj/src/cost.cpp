#include "gacal/cost.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "gacal/errors.hpp"

namespace gacal {

namespace {

double log_strain(double e, double e0) { return std::log(1.0 - (e0 - e) / (e0 + 1.0)); }

std::vector<double> distances_to(std::span<const Point2> data, std::span<const Point2> curve) {
    std::vector<double> d;
    d.reserve(data.size());
    for (const Point2& a : data) d.push_back(point_polyline_distance(a, curve));
    return d;
}

}  // namespace

OeScaling oe_scaling(const TestCase& test) {
    if (test.kind != TestKind::Oedometer || test.oe_data.empty())
        throw InputDataError("oe_scaling: not an OE test with data");
    OeScaling s;
    s.e0 = test.initial.e;
    s.e_fin = test.terminal;
    for (const OePoint& p : test.oe_data) s.T1_max_abs = std::max(s.T1_max_abs, std::abs(p.sigma_v));
    if (!(s.e_fin < s.e0))
        throw InputDataError("OE test " + std::to_string(test.id) +
                             ": final void ratio must be below the initial one");
    if (!(s.T1_max_abs > 0.0))
        throw InputDataError("OE test " + std::to_string(test.id) + ": zero maximum stress");
    return s;
}

TdScaling td_scaling(const TestCase& test) {
    if (test.kind != TestKind::Triaxial || test.td_data.empty())
        throw InputDataError("td_scaling: not a TD test with data");
    TdScaling s;
    s.eps_fin = test.terminal;
    s.q_max = -std::numeric_limits<double>::infinity();
    for (const TdPoint& p : test.td_data) {
        s.eps_v_max_abs = std::max(s.eps_v_max_abs, std::abs(p.eps_v));
        s.q_max = std::max(s.q_max, p.q);
    }
    const std::string id = std::to_string(test.id);
    if (!(s.eps_fin > 0.0)) throw InputDataError("TD test " + id + ": non-positive final strain");
    if (!(s.eps_v_max_abs > 0.0)) throw InputDataError("TD test " + id + ": zero volumetric strain");
    if (!(s.q_max > 0.0)) throw InputDataError("TD test " + id + ": non-positive maximum q");
    return s;
}

PlanePoints scale_oe(std::span<const OePoint> points, const OeScaling& s, int test_id) {
    if (!(s.e_fin < s.e0) || !(s.T1_max_abs > 0.0))
        throw InputDataError("scale_oe: degenerate normalizer");
    PlanePoints out{Plane::Oedometric, test_id, {}};
    out.points.reserve(points.size());
    const double denom = log_strain(s.e_fin, s.e0);
    for (const OePoint& p : points)
        out.points.push_back({log_strain(p.e, s.e0) / denom, p.sigma_v / s.T1_max_abs});
    return out;
}

TdPlanes scale_td(std::span<const TdPoint> points, const TdScaling& s, int test_id) {
    if (!(s.eps_fin > 0.0) || !(s.eps_v_max_abs > 0.0) || !(s.q_max > 0.0))
        throw InputDataError("scale_td: degenerate normalizer");
    TdPlanes out{{Plane::Deviatoric, test_id, {}}, {Plane::Volumetric, test_id, {}}};
    out.deviatoric.points.reserve(points.size());
    out.volumetric.points.reserve(points.size());
    for (const TdPoint& p : points) {
        const double x = p.eps_a / s.eps_fin;
        out.deviatoric.points.push_back({x, p.q / s.q_max});
        out.volumetric.points.push_back({x, p.eps_v / s.eps_v_max_abs});
    }
    return out;
}

double point_segment_distance(Point2 a, Point2 p, Point2 q) noexcept {
    const double vx = q.x - p.x;
    const double vy = q.y - p.y;
    const double wx = a.x - p.x;
    const double wy = a.y - p.y;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0.0 ? (wx * vx + wy * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(wx - t * vx, wy - t * vy);
}

double point_polyline_distance(Point2 a, std::span<const Point2> curve) {
    if (curve.size() < 2) throw Error("point_polyline_distance: curve needs at least two points");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < curve.size(); ++j)
        best = std::min(best, point_segment_distance(a, curve[j], curve[j + 1]));
    return best;
}

double delta_plane(std::span<const std::vector<double>> per_test_distances) {
    double delta = 0.0;
    for (const auto& d : per_test_distances) {
        if (d.empty()) continue;
        double sq = 0.0;
        for (double x : d) sq += x * x;
        delta += std::sqrt(sq) / static_cast<double>(d.size());
    }
    return delta;
}

double cost_total(const std::array<double, 3>& deltas, const Weights& weights, bool feasible,
                  double unreached_fraction) {
    if (!feasible) return kInfeasiblePenalty * (1.0 + std::clamp(unreached_fraction, 0.0, 1.0));
    double total = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        if (weights[i] != 0.0) total += weights[i] * deltas[i];
    return total;
}

CostBreakdown evaluate_candidate(const ParameterVector& candidate, std::span<const TestCase> tests,
                                 const Weights& weights, std::size_t n_step) {
    const SHParameters p = SHParameters::from_vector(candidate);
    CostBreakdown out;
    auto reject = [&](double unreached) {
        out.feasible = false;
        out.delta.fill(std::numeric_limits<double>::quiet_NaN());
        out.total = cost_total(out.delta, weights, false, unreached);
        return out;
    };
    try {
        p.validate();
    } catch (const ParameterDomainError&) {
        return reject(1.0);
    }

    std::array<std::vector<std::vector<double>>, 3> distances;
    double unreached = 0.0;
    bool feasible = true;
    for (const TestCase& test : tests) {
        const ResponseCurve curve = integrate(p, test, n_step);
        if (!curve.feasible) {
            feasible = false;
            unreached += 1.0 - curve.reached_fraction();
            continue;
        }
        if (!feasible) continue;
        if (test.kind == TestKind::Oedometer) {
            const OeScaling s = oe_scaling(test);
            const PlanePoints data = scale_oe(test.oe_data, s, test.id);
            const PlanePoints model = scale_oe(curve.oe, s, test.id);
            distances[0].push_back(distances_to(data.points, model.points));
        } else {
            const TdScaling s = td_scaling(test);
            const TdPlanes data = scale_td(test.td_data, s, test.id);
            const TdPlanes model = scale_td(curve.td, s, test.id);
            distances[1].push_back(distances_to(data.deviatoric.points, model.deviatoric.points));
            distances[2].push_back(distances_to(data.volumetric.points, model.volumetric.points));
        }
    }
    if (!feasible) return reject(tests.empty() ? 1.0 : unreached / static_cast<double>(tests.size()));

    for (std::size_t i = 0; i < 3; ++i) out.delta[i] = delta_plane(distances[i]);
    out.total = cost_total(out.delta, weights, true);
    if (!std::isfinite(out.total)) return reject(0.0);
    return out;
}

std::vector<std::size_t> rank_costs(std::span<const double> totals) {
    std::vector<std::size_t> order(totals.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return totals[a] < totals[b]; });
    return order;
}

Evaluation evaluate_population(std::span<const ParameterVector> population,
                               std::span<const TestCase> tests, const Weights& weights,
                               std::size_t n_step, std::size_t workers) {
    Evaluation ev;
    ev.costs.resize(population.size());
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(population.size(), 1));

    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    auto work = [&] {
        try {
            for (std::size_t i = next++; i < population.size(); i = next++)
                ev.costs[i] = evaluate_candidate(population[i], tests, weights, n_step);
        } catch (...) {
            std::scoped_lock lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = population.size();
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<double> totals(ev.costs.size());
    std::transform(ev.costs.begin(), ev.costs.end(), totals.begin(),
                   [](const CostBreakdown& c) { return c.total; });
    ev.ranking = rank_costs(totals);
    return ev;
}

}  // namespace gacal
