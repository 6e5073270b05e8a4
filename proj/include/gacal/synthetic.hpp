#pragma once

// Synthetic "laboratory" data produced by simulating tests with known parameters.

#include <cstdint>
#include <span>
#include <vector>

#include "gacal/constitutive.hpp"
#include "gacal/simulator.hpp"

namespace gacal {

struct SyntheticTest {
    TestKind kind = TestKind::Oedometer;
    SoilState initial;      ///< internal sign convention
    double terminal = 0.0;  ///< e_fin for OE, eps_fin (fraction) for TD
    std::size_t points = 10;
};

struct SyntheticOptions {
    std::size_t n_step = 100;
    double noise = 0.0;          ///< relative Gaussian noise on sigma_v, q and strains; 0 = exact
    std::uint64_t seed = 1;
    int significant_digits = 0;  ///< round recorded values; 0 keeps full precision
};

/// Simulates each recipe and samples `points` states evenly in step index
/// (first and last included). Throws InputDataError if a simulation is infeasible.
std::vector<TestCase> synthesize_tests(const SHParameters& p, std::span<const SyntheticTest> recipe,
                                       const SyntheticOptions& options);

}  // namespace gacal
