#include "gacal/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gacal/errors.hpp"

namespace gacal {

namespace {

std::size_t round_count(double x) { return static_cast<std::size_t>(std::llround(x)); }

ParameterVector uniform_row(const SearchDomain& dom, UniformRng& rng) {
    ParameterVector row{};
    for (std::size_t j = 0; j < kParameterCount; ++j) {
        const double theta = rng();
        row[j] = dom.lower[j] + theta * (dom.upper[j] - dom.lower[j]);
    }
    return row;
}

ParameterVector clamp_row(ParameterVector row, const SearchDomain& dom) {
    for (std::size_t j = 0; j < kParameterCount; ++j)
        row[j] = std::clamp(row[j], dom.lower[j], dom.upper[j]);
    return row;
}

}  // namespace

std::size_t GAConfig::mating_pool() const { return round_count(mating_fraction * static_cast<double>(population_size)); }

void GAConfig::validate() const {
    auto fail = [](const std::string& what) { throw ConfigError("GA setup: " + what); };
    if (dimension != kParameterCount)
        fail("P_dim must be " + std::to_string(kParameterCount) + ", got " + std::to_string(dimension));
    if (population_size < 2) fail("N_i must be at least 2");
    if (iterations < 2) fail("N_ITER must be at least 2");
    if (elites >= population_size) fail("N_eli must be smaller than N_i");
    if (!(mating_fraction > 0.0 && mating_fraction <= 1.0)) fail("n_f must lie in (0, 1]");
    if (!(mutation_initial > 0.0 && mutation_initial <= 1.0)) fail("mu_in must lie in (0, 1]");
    if (!(mutation_final > 0.0 && mutation_final <= mutation_initial))
        fail("mu_en must lie in (0, mu_in]");
    if (mating_pool() < 2) fail("round(n_f * N_i) must be at least 2");
    if (round_count(mutation_initial * static_cast<double>(population_size)) + elites > population_size)
        fail("round(mu_in * N_i) + N_eli exceeds N_i");
}

void SearchDomain::validate() const {
    for (std::size_t j = 0; j < kParameterCount; ++j) {
        if (!(lower[j] < upper[j]))
            throw ConfigError("search domain: lower bound of " + std::string(kParameterNames[j]) +
                              " must be below the upper bound");
    }
    for (const ParameterVector* bound : {&lower, &upper}) {
        try {
            SHParameters::from_vector(*bound).validate();
        } catch (const ParameterDomainError& e) {
            throw ConfigError(std::string("search domain: ") + e.what());
        }
    }
}

double triangular_sample(double lower, double mode, double upper, double u) {
    if (!(lower <= mode && mode <= upper && lower < upper))
        throw ConfigError("triangular_sample: need lower <= mode <= upper and lower < upper");
    const double range = upper - lower;
    const double split = (mode - lower) / range;
    if (u < split) return lower + std::sqrt(u * range * (mode - lower));
    return upper - std::sqrt((1.0 - u) * range * (upper - mode));
}

std::size_t triangular_rank(std::size_t upper, double u) {
    const double x = triangular_sample(1.0, 1.0, static_cast<double>(upper), u);
    return std::clamp<std::size_t>(round_count(x), 1, upper);
}

Population init_population(const SearchDomain& dom, const GAConfig& cfg, UniformRng& rng) {
    Population pop;
    pop.rows.reserve(cfg.population_size);
    for (std::size_t i = 0; i < cfg.population_size; ++i) pop.rows.push_back(uniform_row(dom, rng));
    return pop;
}

MutationCounts mutation_schedule(const GAConfig& cfg, std::size_t iteration) {
    if (cfg.iterations < 2 || iteration < 1 || iteration > cfg.iterations)
        throw ConfigError("mutation_schedule: iteration out of range");
    const double exponent =
        static_cast<double>(iteration - 1) / static_cast<double>(cfg.iterations - 1);
    MutationCounts m;
    m.ratio = cfg.mutation_initial * std::pow(cfg.mutation_final / cfg.mutation_initial, exponent);
    if (iteration == 1) m.ratio = cfg.mutation_initial;
    if (iteration == cfg.iterations) m.ratio = cfg.mutation_final;
    m.mutated = round_count(m.ratio * static_cast<double>(cfg.population_size));
    m.recombined = round_count(static_cast<double>(m.mutated) * static_cast<double>(iteration) /
                               static_cast<double>(cfg.iterations));
    m.recombined = std::min(m.recombined, m.mutated);
    m.reinitialized = m.mutated - m.recombined;
    return m;
}

ParameterVector recombine_genes(const Population& pop, std::span<const std::size_t> ranks) {
    ParameterVector child{};
    for (std::size_t j = 0; j < kParameterCount; ++j)
        child[j] = pop.rows[pop.ranking[ranks[j] - 1]][j];
    return child;
}

ParameterVector blend_parents(const ParameterVector& x, const ParameterVector& y,
                              std::span<const double> theta) {
    ParameterVector child{};
    for (std::size_t j = 0; j < kParameterCount; ++j)
        child[j] = x[j] * theta[j] + y[j] * (1.0 - theta[j]);
    return child;
}

Population update_population(const Population& pop, const SearchDomain& dom, const GAConfig& cfg,
                             std::size_t iteration, UniformRng& rng) {
    const std::size_t n = cfg.population_size;
    if (pop.rows.size() != n || pop.ranking.size() != n)
        throw ConfigError("update_population: population must be evaluated and ranked");
    const MutationCounts m = mutation_schedule(cfg, iteration);
    if (cfg.elites + m.mutated > n) throw ConfigError("update_population: negative N_mat");
    const std::size_t mating = n - cfg.elites - m.mutated;
    const std::size_t pool = cfg.mating_pool();

    Population next;
    next.rows.reserve(n);
    for (std::size_t i = 0; i < cfg.elites; ++i) next.rows.push_back(pop.rows[pop.ranking[i]]);

    std::array<std::size_t, kParameterCount> ranks{};
    for (std::size_t i = 0; i < m.recombined; ++i) {
        for (auto& r : ranks) r = triangular_rank(n, rng());
        next.rows.push_back(recombine_genes(pop, ranks));
    }
    for (std::size_t i = 0; i < m.reinitialized; ++i) next.rows.push_back(uniform_row(dom, rng));

    std::vector<std::size_t> x(mating), y(mating);
    for (auto& r : x) r = triangular_rank(pool, rng());
    for (auto& r : y) r = triangular_rank(pool, rng());
    std::array<double, kParameterCount> theta{};
    for (std::size_t i = 0; i < mating; ++i) {
        for (auto& t : theta) t = rng();
        const ParameterVector child = blend_parents(pop.rows[pop.ranking[x[i] - 1]],
                                                    pop.rows[pop.ranking[y[i] - 1]], theta);
        next.rows.push_back(clamp_row(child, dom));
    }
    return next;
}

HistoryRow summarize(const Population& pop, std::size_t iteration) {
    HistoryRow row;
    row.iteration = iteration;
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    row.delta_min.fill(nan);
    row.delta_max.fill(nan);
    row.best_cost = pop.costs.empty() ? nan : pop.costs[pop.ranking.front()].total;
    for (const CostBreakdown& c : pop.costs) {
        if (!c.feasible) continue;
        for (std::size_t i = 0; i < 3; ++i) {
            if (row.feasible == 0) {
                row.delta_min[i] = row.delta_max[i] = c.delta[i];
            } else {
                row.delta_min[i] = std::min(row.delta_min[i], c.delta[i]);
                row.delta_max[i] = std::max(row.delta_max[i], c.delta[i]);
            }
        }
        ++row.feasible;
    }
    return row;
}

RunResult run(const GAConfig& cfg, const SearchDomain& dom, std::span<const TestCase> tests,
              const RunOptions& options) {
    cfg.validate();
    dom.validate();
    if (tests.empty()) throw ConfigError("run: at least one test is required");
    if (options.n_step == 0) throw ConfigError("run: n_Step must be at least 1");

    RunResult result;
    result.seed = cfg.seed != 0 ? cfg.seed
                                : (static_cast<std::uint64_t>(std::random_device{}()) << 32) |
                                      std::random_device{}();
    UniformRng rng(result.seed);

    auto evaluate = [&](Population& pop, std::size_t index) {
        Evaluation ev = evaluate_population(pop.rows, tests, options.weights, options.n_step,
                                            options.workers);
        pop.costs = std::move(ev.costs);
        pop.ranking = std::move(ev.ranking);
        result.history.push_back(summarize(pop, index));
        if (options.observer) options.observer(index, pop, result.history.back());
    };

    Population pop = init_population(dom, cfg, rng);
    for (std::size_t iter = 1; iter <= cfg.iterations; ++iter) {
        evaluate(pop, iter);
        pop = update_population(pop, dom, cfg, iter, rng);
    }
    evaluate(pop, cfg.iterations + 1);

    result.best = pop.rows[pop.ranking.front()];
    result.best_cost = pop.costs[pop.ranking.front()];
    result.final_population = std::move(pop);
    return result;
}

}  // namespace gacal
