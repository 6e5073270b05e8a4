#include "gacal/synthetic.hpp"

#include <cmath>
#include <random>
#include <string>

#include "gacal/errors.hpp"

namespace gacal {

namespace {

double round_digits(double v, int digits) {
    if (digits <= 0 || v == 0.0 || !std::isfinite(v)) return v;
    const double magnitude = std::floor(std::log10(std::abs(v)));
    const double scale = std::pow(10.0, static_cast<double>(digits) - 1.0 - magnitude);
    return std::round(v * scale) / scale;
}

}  // namespace

std::vector<TestCase> synthesize_tests(const SHParameters& p, std::span<const SyntheticTest> recipe,
                                       const SyntheticOptions& options) {
    std::mt19937_64 engine(options.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto noisy = [&](double v) {
        return options.noise > 0.0 ? v * (1.0 + options.noise * gauss(engine)) : v;
    };
    auto rec = [&](double v) { return round_digits(v, options.significant_digits); };

    std::vector<TestCase> tests;
    int oe_id = 0;
    int td_id = 0;
    for (const SyntheticTest& r : recipe) {
        if (r.points < 2) throw InputDataError("synthesize_tests: need at least two points per test");
        TestCase shell;
        shell.kind = r.kind;
        shell.initial = r.initial;
        shell.terminal = r.terminal;
        const ResponseCurve curve = integrate(p, shell, options.n_step);
        if (!curve.feasible)
            throw InputDataError("synthesize_tests: simulation left the admissible domain");

        std::vector<std::size_t> picks;
        for (std::size_t k = 0; k < r.points; ++k)
            picks.push_back(static_cast<std::size_t>(std::llround(
                static_cast<double>(k) * static_cast<double>(options.n_step) /
                static_cast<double>(r.points - 1))));

        if (r.kind == TestKind::Oedometer) {
            std::vector<OePoint> data;
            for (std::size_t i = 0; i < picks.size(); ++i) {
                const OePoint& pt = curve.oe[picks[i]];
                // the first point is the initial state and is kept exact
                data.push_back(i == 0 ? OePoint{rec(pt.e), rec(pt.sigma_v)}
                                      : OePoint{rec(pt.e), rec(noisy(pt.sigma_v))});
            }
            data.front().e = r.initial.e;
            tests.push_back(make_oe_test(++oe_id, r.initial, std::move(data)));
        } else {
            std::vector<TdPoint> data;
            for (std::size_t i = 0; i < picks.size(); ++i) {
                const TdPoint& pt = curve.td[picks[i]];
                if (i == 0) {
                    data.push_back({0.0, 0.0, rec(pt.q)});
                } else {
                    const double eps_a = rec(pt.eps_a * 100.0) / 100.0;
                    data.push_back({eps_a, rec(noisy(pt.eps_v) * 100.0) / 100.0, rec(noisy(pt.q))});
                }
            }
            tests.push_back(make_td_test(++td_id, r.initial, std::move(data)));
        }
    }
    return tests;
}

}  // namespace gacal
