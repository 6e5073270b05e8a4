#include "gacal/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "gacal/errors.hpp"

namespace gacal::cli {

namespace {

std::string cell(double v) {
    if (std::isnan(v)) return fmt::format("{:>11}", "-");
    return fmt::format("{:>11.4g}", v);
}

}  // namespace

std::string iteration_header() {
    return fmt::format("{:>6} {:>11} {:>11} {:>11} {:>11} {:>11} {:>11} {:>11}", "ITER", "dOE min",
                       "dOE max", "dTD_q min", "dTD_q max", "dTD_e min", "dTD_e max", "best");
}

std::string report_iteration(const HistoryRow& row) {
    return fmt::format("{:>6} {} {} {} {} {} {} {}", row.iteration, cell(row.delta_min[0]),
                       cell(row.delta_max[0]), cell(row.delta_min[1]), cell(row.delta_max[1]),
                       cell(row.delta_min[2]), cell(row.delta_max[2]), cell(row.best_cost));
}

void print_input_summary(std::ostream& out, const io::LoadedInputs& li) {
    const io::RunInput& in = li.input;
    out << "== Input summary ==\n";
    out << fmt::format("data folder      : {}\n", li.directory.string());
    out << fmt::format("OE tests         : {}\nTD tests         : {}\n", in.n_oe, in.n_td);
    out << fmt::format("n_Step           : {}\n", in.n_step);
    out << fmt::format("weights          : {} {} {}\n", in.weights[0], in.weights[1], in.weights[2]);
    out << "search domain:\n";
    for (std::size_t j = 0; j < kParameterCount; ++j)
        out << fmt::format("  {:<9} {:>12.6g} {:>12.6g}  [{}]\n", kParameterNames[j], li.domain.lower[j],
                           li.domain.upper[j], kParameterUnits[j]);
    const GAConfig& g = li.ga;
    out << fmt::format("GA setup         : N_i={} P_dim={} N_ITER={} N_eli={} n_f={} mu_en={} mu_in={}\n",
                       g.population_size, g.dimension, g.iterations, g.elites, g.mating_fraction,
                       g.mutation_final, g.mutation_initial);
    for (const TestCase& t : li.tests) {
        const bool oe = t.kind == TestKind::Oedometer;
        out << fmt::format("  {} test {}: T1={:.6g} T2={:.6g} MPa e0={:.6g}, {} points, {}={:.6g}{}\n",
                           oe ? "OE" : "TD", t.id, -t.initial.T1, -t.initial.T2, t.initial.e,
                           t.point_count(), oe ? "e_fin" : "eps_fin",
                           oe ? t.terminal : 100.0 * t.terminal, oe ? "" : "%");
    }
    for (const std::string& w : li.warnings) out << "warning: " << w << '\n';
    out << '\n';
}

void print_final_summary(std::ostream& out, const RunResult& result,
                         std::chrono::duration<double> elapsed) {
    const Population& pop = result.final_population;
    out << "\n== Best candidates (final evaluation) ==\n";
    out << fmt::format("{:>5} {:>6} {:>14}\n", "rank", "ID", "cost");
    const std::size_t top = std::min<std::size_t>(10, pop.size());
    for (std::size_t r = 0; r < top; ++r) {
        const std::size_t row = pop.ranking[r];
        out << fmt::format("{:>5} {:>6} {:>14.6g}\n", r + 1, row + 1, pop.costs[row].total);
    }

    out << "\n== Parameters of the best five ==\n";
    out << fmt::format("{:>6}", "ID");
    for (auto name : kParameterNames) out << fmt::format(" {:>10}", name);
    out << '\n';
    for (std::size_t r = 0; r < std::min<std::size_t>(5, pop.size()); ++r) {
        const std::size_t row = pop.ranking[r];
        out << fmt::format("{:>6}", row + 1);
        for (double v : pop.rows[row]) out << fmt::format(" {:>10.5g}", v);
        out << '\n';
    }

    out << "\n== Best fit ==\n";
    const SHParameters p = SHParameters::from_vector(result.best);
    for (std::size_t j = 0; j < kParameterCount; ++j)
        out << fmt::format("  {:<9} {:>12.6g} {}\n", kParameterNames[j], result.best[j], kParameterUnits[j]);
    out << fmt::format("  {:<9} {:>12.6g} -\n  {:<9} {:>12.6g} -\n", "e_d0", p.e_d0(), "e_i0", p.e_i0());
    out << fmt::format("  cost {:.6g} (delta_OE {:.4g}, delta_TD_q {:.4g}, delta_TD_e {:.4g})\n",
                       result.best_cost.total, result.best_cost.delta[0], result.best_cost.delta[1],
                       result.best_cost.delta[2]);
    out << fmt::format("\nElapsed time: {:.2f} s\n", elapsed.count());
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Genetic-algorithm calibration of the sand hypoplastic model"};
    std::string input_flag;
    std::string input_positional;
    std::uint64_t seed = 0;
    std::size_t workers = 0;
    std::string out_dir = ".";
    app.add_option("file", input_positional, "Input.txt path (prompted when absent)");
    app.add_option("--input,-i", input_flag, "Input.txt path");
    app.add_option("--seed", seed, "RNG seed; 0 draws one from system entropy");
    app.add_option("--workers", workers, "evaluation threads; 0 uses all cores");
    app.add_option("--out", out_dir, "output directory");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
    }

    std::string input = !input_flag.empty() ? input_flag : input_positional;
    if (input.empty()) {
        out << "Input file (e.g. data/Input.txt): " << std::flush;
        std::getline(in, input);
        if (input.empty()) {
            err << "error: no input file given\n";
            return kExitInput;
        }
    }

    io::LoadedInputs li;
    try {
        li = io::load_inputs(input);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    print_input_summary(out, li);

    GAConfig cfg = li.ga;
    cfg.seed = seed;
    std::vector<io::LogEntry> log;
    RunOptions options;
    options.n_step = li.input.n_step;
    options.weights = li.input.weights;
    options.workers = workers;
    options.observer = [&](std::size_t index, const Population& pop, const HistoryRow& row) {
        if (index == 1) out << "== GA evolution ==\n" << iteration_header() << '\n';
        out << report_iteration(row) << '\n';
        for (std::size_t i = 0; i < pop.size(); ++i)
            log.push_back({index, pop.rows[i], pop.costs[i].total});
    };

    const auto start = std::chrono::steady_clock::now();
    RunResult result;
    try {
        result = gacal::run(cfg, li.domain, li.tests, options);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    io::OutputBundle bundle;
    bundle.log = std::move(log);
    bundle.best = result.best;
    bundle.best_cost = result.best_cost;
    bundle.best_row = result.final_population.ranking.front();
    bundle.seed = result.seed;
    bundle.tests = li.tests;
    bundle.final_population = result.final_population.rows;
    bundle.n_step = li.input.n_step;
    try {
        io::write_outputs(bundle, out_dir);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }

    print_final_summary(out, result, elapsed);
    out << "seed: " << result.seed << '\n';
    return kExitOk;
}

}  // namespace gacal::cli
