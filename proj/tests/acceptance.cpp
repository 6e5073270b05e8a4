// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gacal/cli.hpp"
#include "gacal/constitutive.hpp"
#include "gacal/cost.hpp"
#include "gacal/io_config.hpp"
#include "gacal/optimizer.hpp"
#include "gacal/simulator.hpp"
#include "gacal/synthetic.hpp"
#include "support.hpp"
#include "temp_dir.hpp"

using namespace gacal;
namespace fs = std::filesystem;
using gacal::testing::close_rel;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Outcome coefficient_oracle() {
    const SHParameters w = gacal::testing::wolffersdorff();
    double worst = 0.0;
    worst = std::max(worst, rel_err(barotropy_a(33.0 * std::numbers::pi / 180.0), 2.7607190780931424915));
    worst = std::max(worst, rel_err(barotropy_a(30.0 * std::numbers::pi / 180.0), 3.0618621784789726227));
    worst = std::max(worst, rel_err(stiffness_fs(w, {-0.1, -0.1, 0.8}), 4.2188535913763237457));
    worst = std::max(worst, rel_err(stiffness_fs(w, {-0.3, -0.1, 0.7}), 7.4295353467886669649));
    worst = std::max(worst, rel_err(void_ratio_limits(w, -0.3).e_c, 0.83285085731642648094));
    const StateRate r = rate_oe(w, {-0.10, -0.05, 0.75});
    worst = std::max(worst, rel_err(r.dT1, -11.112405428566483337));
    worst = std::max(worst, rel_err(r.dT2, -4.8737534288490801184));
    const TriaxialRate td = rate_td(w, {-0.3, -0.1, 0.7});
    worst = std::max(worst, rel_err(td.D2, 0.44641741627396202397));
    worst = std::max(worst, rel_err(td.rate.dT1, -6.407363432403209047));
    worst = std::max(worst, rel_err(td.rate.de, -0.18218078466852911849));
    return {worst <= 1e-9, fmt::format("max relative error {:.3g}", worst)};
}

Outcome integrator_order() {
    const SHParameters w = gacal::testing::wolffersdorff();
    const double e0 = 0.70;
    const double e_fin = 0.60;
    const TestCase t = make_oe_test(1, {-0.01, -0.005, e0}, {{e0, 0.01}, {e_fin, 1.0}});
    std::vector<double> errors;
    for (std::size_t n : {50, 100, 200, 400}) {
        const ResponseCurve c = integrate(w, t, n);
        if (!c.feasible) return {false, fmt::format("infeasible at n_Step = {}", n)};
        const double exact = (1.0 + e0) * std::exp(-c.time.back()) - 1.0;
        errors.push_back(std::abs(c.states.back().e - exact));
    }
    bool pass = true;
    std::string ratios;
    for (std::size_t k = 1; k < errors.size(); ++k) {
        const double ratio = errors[k - 1] / errors[k];
        ratios += fmt::format(" {:.4f}", ratio);
        pass = pass && std::abs(ratio - 2.0) < 0.05;
    }
    const double at100 = std::abs(integrate(w, t, 100).states.back().e - e_fin);
    pass = pass && at100 <= 1e-4;
    return {pass, fmt::format("error ratios{}; |e - e_fin| at 100 steps = {:.3g}", ratios, at100)};
}

Outcome td_closure() {
    std::mt19937_64 g(2024);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const SHParameters p = gacal::testing::random_parameters(g);
        const SoilState s = gacal::testing::random_state(g, p, 4.0);
        const TriaxialRate r = rate_td(p, s);
        worst = std::max(worst, std::abs(r.rate.dT2) / std::max(1.0, std::abs(r.rate.dT1)));
    }
    double drift = 0.0;
    std::size_t runs = 0;
    for (int i = 0; i < 50; ++i) {
        const SHParameters p = gacal::testing::random_parameters(g);
        const double cell = std::uniform_real_distribution<double>(0.05, 0.4)(g);
        const auto lims = gacal::testing::oracle_limits(p, -3.0 * cell);
        const double e0 = lims[0] + std::uniform_real_distribution<double>(0.1, 0.9)(g) * (lims[2] - lims[0]);
        const TestCase t = make_td_test(1, {-cell, -cell, e0}, {{0, 0, 0}, {0.1, 0.0, 0.3}});
        const ResponseCurve c = integrate(p, t, 200);
        for (const SoilState& s : c.states) drift = std::max(drift, std::abs(s.T2 + cell) / cell);
        ++runs;
    }
    return {worst <= 1e-10 && drift <= 1e-6,
            fmt::format("max scaled residual {:.3g}; max T2 drift {:.3g} over {} integrations", worst, drift, runs)};
}

Outcome homogeneity() {
    std::mt19937_64 g(77);
    std::uniform_real_distribution<double> lam(0.01, 100.0), d2(-2.0, 2.0);
    double worst = 0.0;
    auto compare = [&](const StateRate& scaled, const StateRate& base, double l) {
        for (auto [a, b] : {std::pair{scaled.dT1, base.dT1}, {scaled.dT2, base.dT2}, {scaled.de, base.de}}) {
            const double ref = std::max({std::abs(l * b), std::abs(l * base.dT1), 1e-300});
            worst = std::max(worst, std::abs(a - l * b) / ref);
        }
    };
    for (int i = 0; i < 1000; ++i) {
        const SHParameters p = gacal::testing::random_parameters(g);
        const SoilState s = gacal::testing::random_state(g, p, 3.0);
        const double l = lam(g);
        const double D2 = d2(g);
        compare(rate(p, s, -l, -l * D2), rate(p, s, -1.0, -D2), l);
        compare(rate_oe(p, s, -l), rate_oe(p, s), l);
        compare(rate_td(p, s, -l).rate, rate_td(p, s).rate, l);
    }
    return {worst <= 1e-12, fmt::format("max relative deviation {:.3g}", worst)};
}

Outcome distance_oracle() {
    std::mt19937_64 g(5);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        std::vector<Point2> curve(2 + i % 20);
        for (Point2& q : curve) q = {u(g), u(g)};
        const Point2 a{u(g), u(g)};
        // dense sampling of every segment, refined three times around the closest sample
        double brute = INFINITY;
        constexpr int kSamples = 1000;
        for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
            double lo = 0.0, hi = 1.0;
            for (int level = 0; level < 4; ++level) {
                double best_t = lo, best_d = INFINITY;
                for (int m = 0; m <= kSamples; ++m) {
                    const double t = lo + (hi - lo) * m / kSamples;
                    const double x = curve[k].x + t * (curve[k + 1].x - curve[k].x);
                    const double y = curve[k].y + t * (curve[k + 1].y - curve[k].y);
                    const double d = std::hypot(a.x - x, a.y - y);
                    if (d < best_d) best_d = d, best_t = t;
                }
                brute = std::min(brute, best_d);
                const double step = (hi - lo) / kSamples;
                lo = std::max(0.0, best_t - step);
                hi = std::min(1.0, best_t + step);
            }
        }
        worst = std::max(worst, std::abs(point_polyline_distance(a, curve) - brute));
    }
    return {worst <= 1e-6, fmt::format("max |exact - sampled| {:.3g}", worst)};
}

Outcome triangular_and_schedule() {
    UniformRng rng(99);
    std::vector<double> x(100000);
    for (double& v : x) v = triangular_sample(1.0, 1.0, 10.0, rng());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double F = 1.0 - std::pow((10.0 - x[i]) / 9.0, 2);
        ks = std::max({ks, std::abs(F - i / n), std::abs(F - (i + 1) / n)});
    }
    GAConfig cfg;
    bool identities = true;
    for (std::size_t iters : {2, 7, 100, 101}) {
        cfg.iterations = iters;
        identities = identities && mutation_schedule(cfg, 1).ratio == cfg.mutation_initial &&
                     mutation_schedule(cfg, iters).ratio == cfg.mutation_final &&
                     mutation_schedule(cfg, iters).reinitialized == 0;
    }
    return {ks < 0.01 && identities,
            fmt::format("KS = {:.4g}; schedule identities {}", ks, identities ? "hold" : "broken")};
}

std::vector<SyntheticTest> recovery_recipe() {
    return {
        {TestKind::Oedometer, {-0.01, -0.005, 0.66}, 0.595, 14},
        {TestKind::Triaxial, {-0.2, -0.2, 0.665}, 0.10, 16},
    };
}

Outcome synthetic_recovery() {
    const io::LoadedInputs li = io::load_inputs(fs::path(GACAL_TUTORIAL_DIR) / "Input.txt");
    const ParameterVector truth = gacal::testing::gacal_column();
    const std::vector<TestCase> tests =
        synthesize_tests(SHParameters::from_vector(truth), recovery_recipe(), {});
    GAConfig cfg = li.ga;
    cfg.population_size = 100;
    cfg.iterations = 50;
    cfg.seed = 20240601;
    RunOptions options;
    options.workers = 0;
    const RunResult r = run(cfg, li.domain, tests, options);
    const double dphi = std::abs(r.best[0] - truth[0]);
    const double dn = std::abs(r.best[2] - truth[2]);
    return {r.best_cost.total <= 1e-2 && dphi <= 1.0 && dn <= 0.03,
            fmt::format("cost {:.4g}; phi_c {:.3f} (|d| {:.3f}); n {:.4f} (|d| {:.4f})", r.best_cost.total,
                        r.best[0], dphi, r.best[2], dn)};
}

Outcome tutorial() {
    const io::LoadedInputs li = io::load_inputs(fs::path(GACAL_TUTORIAL_DIR) / "Input.txt");
    GAConfig cfg = li.ga;
    cfg.seed = 42;
    RunOptions options;
    options.n_step = li.input.n_step;
    options.weights = li.input.weights;
    options.workers = 0;
    const auto start = std::chrono::steady_clock::now();
    const RunResult r = run(cfg, li.domain, li.tests, options);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    const double reference =
        evaluate_candidate(gacal::testing::wolffersdorff().to_vector(), li.tests, li.input.weights, li.input.n_step)
            .total;
    const bool pass = r.best_cost.total <= reference && r.best[0] >= 31.0 && r.best[0] <= 36.0 &&
                      r.best[2] >= 0.15 && r.best[2] <= 0.35;
    return {pass, fmt::format("cost {:.4g} vs reference set {:.4g}; phi_c {:.3f}; n {:.4f}; {:.1f} s",
                              r.best_cost.total, reference, r.best[0], r.best[2], elapsed.count())};
}

Outcome determinism() {
    gacal::testing::TempDir tmp;
    io::LoadedInputs li = io::load_inputs(fs::path(GACAL_TUTORIAL_DIR) / "Input.txt");
    li.ga.population_size = 60;
    li.ga.iterations = 10;
    io::write_inputs(li, tmp.path() / "data");
    std::vector<std::string> contents;
    for (const char* run : {"a", "b"}) {
        const std::string input = (tmp.path() / "data" / "Input.txt").string();
        const std::string out = (tmp.path() / run).string();
        const char* argv[] = {"gacal", input.c_str(), "--seed", "7", "--workers", "1", "--out", out.c_str()};
        std::istringstream in;
        std::ostringstream sink;
        if (cli::run(8, argv, in, sink, sink) != cli::kExitOk) return {false, "run failed: " + sink.str()};
        std::ifstream f(tmp.path() / run / io::kBestFitFile, std::ios::binary);
        std::stringstream s;
        s << f.rdbuf();
        contents.push_back(s.str());
    }
    const bool same = !contents[0].empty() && contents[0] == contents[1];
    return {same, same ? "best_fit.txt identical across two runs" : "best_fit.txt differs"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"coefficient oracle", coefficient_oracle},
        {"integrator order", integrator_order},
        {"TD closure", td_closure},
        {"homogeneity", homogeneity},
        {"distance oracle", distance_oracle},
        {"triangular sampler and schedule", triangular_and_schedule},
        {"synthetic recovery", synthetic_recovery},
        {"tutorial calibration", tutorial},
        {"determinism", determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        fmt::print("{} {}: {}\n", o.pass ? "PASS" : "FAIL", name, o.detail);
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
