#pragma once

// Real-coded genetic algorithm with elitism, annealed mutation (recombination
// plus re-initialization), rank-biased triangular selection and blend crossover.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "gacal/constitutive.hpp"
#include "gacal/cost.hpp"
#include "gacal/simulator.hpp"

namespace gacal {

struct GAConfig {
    std::size_t population_size = 500;  ///< N_i
    std::size_t dimension = kParameterCount;
    std::size_t iterations = 100;  ///< N_ITER
    std::size_t elites = 5;        ///< N_eli
    double mating_fraction = 0.5;  ///< n_f
    double mutation_initial = 0.4; ///< mu_in
    double mutation_final = 0.05;  ///< mu_en
    std::uint64_t seed = 0;        ///< 0 draws a seed from std::random_device

    /// N_f = round(n_f * N_i).
    std::size_t mating_pool() const;
    void validate() const;
};

struct SearchDomain {
    ParameterVector lower{};
    ParameterVector upper{};

    /// lower < upper componentwise and both bounds respect the SH parameter domain.
    void validate() const;
};

struct Population {
    std::vector<ParameterVector> rows;
    std::vector<CostBreakdown> costs;   ///< empty until evaluated
    std::vector<std::size_t> ranking;   ///< Class vector, 0-based row indices

    std::size_t size() const noexcept { return rows.size(); }
    bool evaluated() const noexcept { return costs.size() == rows.size() && !rows.empty(); }
};

/// Uniform variates in [0, 1) from a 64-bit Mersenne twister, built from the
/// top 53 bits so the stream is identical on every platform.
class UniformRng {
public:
    explicit UniformRng(std::uint64_t seed) : engine_(seed) {}
    double operator()() noexcept {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

/// Inverse CDF of the triangular distribution (lower, mode, upper) at u in [0, 1).
double triangular_sample(double lower, double mode, double upper, double u);

/// Rank drawn from triangular(1, 1, upper), rounded and clamped to [1, upper].
std::size_t triangular_rank(std::size_t upper, double u);

Population init_population(const SearchDomain& dom, const GAConfig& cfg, UniformRng& rng);

struct MutationCounts {
    double ratio = 0.0;            ///< mu
    std::size_t mutated = 0;       ///< N_mut
    std::size_t recombined = 0;    ///< N_com
    std::size_t reinitialized = 0; ///< N_ran
};

/// Geometric decay of the mutation ratio; `iteration` is 1-based.
MutationCounts mutation_schedule(const GAConfig& cfg, std::size_t iteration);

/// Child gene j taken from the row ranked ranks[j] (1-based).
ParameterVector recombine_genes(const Population& pop, std::span<const std::size_t> ranks);

/// child_j = x_j * theta_j + y_j * (1 - theta_j).
ParameterVector blend_parents(const ParameterVector& x, const ParameterVector& y,
                              std::span<const double> theta);

/// Next generation: elites, recombined, re-initialized, then mated rows.
/// `pop` must be evaluated and ranked.
Population update_population(const Population& pop, const SearchDomain& dom, const GAConfig& cfg,
                             std::size_t iteration, UniformRng& rng);

struct HistoryRow {
    std::size_t iteration = 0;
    std::array<double, 3> delta_min{};  ///< over feasible candidates; NaN when none
    std::array<double, 3> delta_max{};
    double best_cost = 0.0;
    std::size_t feasible = 0;
};

HistoryRow summarize(const Population& pop, std::size_t iteration);

struct RunResult {
    ParameterVector best{};
    CostBreakdown best_cost;
    Population final_population;
    std::vector<HistoryRow> history;
    std::uint64_t seed = 0;
};

/// Called after each evaluation with its 1-based index (N_ITER + 1 for the final one).
using EvaluationObserver = std::function<void(std::size_t, const Population&, const HistoryRow&)>;

struct RunOptions {
    std::size_t n_step = 100;
    Weights weights = kDefaultWeights;
    std::size_t workers = 1;  ///< 0 = hardware concurrency
    EvaluationObserver observer;
};

/// init -> (evaluate -> update) x N_ITER -> evaluate; returns the rank-1 row of the final evaluation.
RunResult run(const GAConfig& cfg, const SearchDomain& dom, std::span<const TestCase> tests,
              const RunOptions& options);

}  // namespace gacal
