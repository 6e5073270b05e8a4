#include "gacal/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "gacal/errors.hpp"

namespace gacal {

TestCase make_oe_test(int id, const SoilState& initial, std::vector<OePoint> data) {
    if (data.empty()) throw InputDataError("OE test " + std::to_string(id) + " has no data");
    TestCase t;
    t.kind = TestKind::Oedometer;
    t.id = id;
    t.initial = initial;
    t.terminal = std::min_element(data.begin(), data.end(), [](const OePoint& a, const OePoint& b) {
                     return a.e < b.e;
                 })->e;
    t.oe_data = std::move(data);
    return t;
}

TestCase make_td_test(int id, const SoilState& initial, std::vector<TdPoint> data) {
    if (data.empty()) throw InputDataError("TD test " + std::to_string(id) + " has no data");
    TestCase t;
    t.kind = TestKind::Triaxial;
    t.id = id;
    t.initial = initial;
    t.terminal = std::max_element(data.begin(), data.end(), [](const TdPoint& a, const TdPoint& b) {
                     return a.eps_a < b.eps_a;
                 })->eps_a;
    t.td_data = std::move(data);
    return t;
}

double integration_time_oe(double e0, double e_fin) {
    if (!(e_fin < e0))
        throw InputDataError("integration_time_oe: final void ratio must be below the initial one");
    return -std::log(1.0 - (e0 - e_fin) / (e0 + 1.0));
}

double integration_time_td(double eps_fin) {
    if (!(eps_fin > 0.0))
        throw InputDataError("integration_time_td: final axial strain must be positive");
    return eps_fin;
}

std::vector<TdPoint> elaborate_td(std::span<const SoilState> states, std::span<const double> times,
                                  double e0) {
    std::vector<TdPoint> out;
    out.reserve(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        const SoilState& s = states[k];
        out.push_back({times[k], -(s.e - e0) / (1.0 + e0), s.T2 - s.T1});
    }
    return out;
}

ResponseCurve integrate(const SHParameters& p, const TestCase& test, std::size_t n_step) {
    if (n_step == 0) throw ConfigError("integrate: n_step must be at least 1");
    const double t_f = test.kind == TestKind::Oedometer
                           ? integration_time_oe(test.initial.e, test.terminal)
                           : integration_time_td(test.terminal);
    const double dt = t_f / static_cast<double>(n_step);

    ResponseCurve curve;
    curve.kind = test.kind;
    curve.n_step = n_step;
    curve.time.reserve(n_step + 1);
    curve.states.reserve(n_step + 1);

    SoilState x = test.initial;
    bool ok = is_admissible(p, x);
    if (ok) {
        curve.time.push_back(0.0);
        curve.states.push_back(x);
    }
    std::optional<double> previous_D2;
    for (std::size_t k = 0; ok && k < n_step; ++k) {
        try {
            StateRate r;
            if (test.kind == TestKind::Oedometer) {
                r = rate_oe(p, x);
            } else {
                const TriaxialRate tr = rate_td(p, x, -1.0, previous_D2);
                previous_D2 = tr.D2;
                r = tr.rate;
            }
            x = SoilState{x.T1 + dt * r.dT1, x.T2 + dt * r.dT2, x.e + dt * r.de};
        } catch (const Error&) {
            ok = false;
            break;
        }
        if (!is_admissible(p, x)) {
            ok = false;
            break;
        }
        curve.time.push_back(static_cast<double>(k + 1) * dt);
        curve.states.push_back(x);
    }
    curve.feasible = ok;

    if (test.kind == TestKind::Oedometer) {
        curve.oe.reserve(curve.states.size());
        for (const SoilState& s : curve.states) curve.oe.push_back({s.e, -s.T1});
    } else {
        curve.td = elaborate_td(curve.states, curve.time, test.initial.e);
    }
    return curve;
}

}  // namespace gacal
