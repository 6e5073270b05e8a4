#pragma once

#include <chrono>
#include <iosfwd>
#include <string>
#include <vector>

#include "gacal/io_config.hpp"
#include "gacal/optimizer.hpp"

namespace gacal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitIo = 3;

std::string iteration_header();

/// One fixed-width row of the convergence table; deltas with 4 significant digits.
std::string report_iteration(const HistoryRow& row);

/// Stage 1: summary of the loaded input files.
void print_input_summary(std::ostream& out, const io::LoadedInputs& inputs);

/// Stage 3: top-10 ranking, top-5 parameter vectors, best fit and timing.
void print_final_summary(std::ostream& out, const RunResult& result,
                         std::chrono::duration<double> elapsed);

/// Full command line front end. `in` is read only for the interactive prompt.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gacal::cli
