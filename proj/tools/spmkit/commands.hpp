#pragma once

#include <CLI11.hpp>

namespace spmkit::cli {

// Exit codes, documented in the README: 0 success, 2 configuration error,
// 3 I/O error, 4 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumerical = 4;

void register_stats(CLI::App& app);
void register_defend(CLI::App& app);
void register_simulate(CLI::App& app);
void register_sweep(CLI::App& app);
void register_fit(CLI::App& app);

}  // namespace spmkit::cli
