#pragma once

// Text formats: one record per line, fields separated by whitespace and/or
// commas, '#' starts a comment. Stresses in files are compression positive;
// TD strains are in percent. See docs/file_formats.md.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gacal/cost.hpp"
#include "gacal/optimizer.hpp"
#include "gacal/simulator.hpp"

namespace gacal::io {

/// Order of the file names listed in Input.txt.
enum class InputFile : std::size_t { Domain = 0, GaSetup, OeInit, TdInit, OeData, TdData };
inline constexpr std::array<const char*, 6> kDefaultFileNames = {
    "Domain_file.txt", "GA_setup.txt", "OE_init.txt", "TD_init.txt", "OE_data.txt", "TD_data.txt"};

struct RunInput {
    std::size_t n_oe = 0;
    std::size_t n_td = 0;
    std::size_t n_step = 100;
    Weights weights = kDefaultWeights;
    std::array<std::string, 6> files{kDefaultFileNames[0], kDefaultFileNames[1],
                                     kDefaultFileNames[2], kDefaultFileNames[3],
                                     kDefaultFileNames[4], kDefaultFileNames[5]};

    const std::string& file(InputFile f) const { return files[static_cast<std::size_t>(f)]; }
};

struct LoadedInputs {
    RunInput input;
    SearchDomain domain;
    GAConfig ga;
    std::vector<TestCase> tests;  ///< OE tests by id, then TD tests by id
    std::vector<std::string> warnings;
    std::filesystem::path directory;  ///< folder holding the seven files
};

/// Reads Input.txt and the six files it names (relative to its folder).
/// Throws ParseError naming file and line, or IoError for missing files.
LoadedInputs load_inputs(const std::filesystem::path& input_file);

/// Writes a complete, loadable input set into `directory` (Input.txt + six files).
void write_inputs(const LoadedInputs& inputs, const std::filesystem::path& directory);

struct LogEntry {
    std::size_t iteration = 0;
    ParameterVector parameters{};
    double cost = 0.0;
};

struct OutputBundle {
    std::vector<LogEntry> log;
    ParameterVector best{};
    CostBreakdown best_cost;
    std::size_t best_row = 0;  ///< 0-based row of the best candidate in the final population
    std::uint64_t seed = 0;
    std::vector<TestCase> tests;
    std::vector<ParameterVector> final_population;
    std::size_t n_step = 100;
};

inline constexpr const char* kLogFile = "log_Pop.txt";
inline constexpr const char* kBestFitFile = "best_fit.txt";
inline constexpr const char* kManifestFile = "manifest.txt";
inline constexpr const char* kOePointsFile = "X_OE.csv";
inline constexpr const char* kTdPointsFile = "X_TD.csv";
inline constexpr const char* kOeCurvesFile = "HX_OE.csv";
inline constexpr const char* kTdCurvesFile = "HX_TD.csv";

/// Appends to log_Pop.txt and (re)writes the remaining outputs. Throws IoError.
void write_outputs(const OutputBundle& bundle, const std::filesystem::path& directory);

struct ManifestFile {
    std::string name;
    std::size_t rows = 0;
    std::vector<std::string> columns;
};

struct Manifest {
    std::size_t n_oe = 0;
    std::size_t n_td = 0;
    std::size_t n_step = 0;
    std::size_t n_candidates = 0;
    std::size_t best_candidate = 0;  ///< 1-based
    std::vector<std::pair<int, std::size_t>> oe_points;  ///< (test id, point count)
    std::vector<std::pair<int, std::size_t>> td_points;
    std::vector<ManifestFile> files;

    const ManifestFile* find(const std::string& name) const;
};

Manifest read_manifest(const std::filesystem::path& file);

/// Parses best_fit.txt back into a parameter vector.
ParameterVector read_best_fit(const std::filesystem::path& file);

/// Number of non-header data rows in a CSV output file.
std::size_t count_csv_rows(const std::filesystem::path& file);

}  // namespace gacal::io
