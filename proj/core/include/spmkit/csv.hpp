#pragma once

#include <filesystem>
#include <string>

namespace spmkit {

/// `# key: value`-style reproducibility header emitted at the top of every
/// output file: the fully resolved configuration as one JSON line. Re-running
/// a command with the same header reproduces the data section byte for byte.
std::string repro_header(const std::string& config_json);

/// Atomically-ish writes content (temp file + rename) so interrupted sweeps
/// never leave half-written cells behind.
void write_file(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace spmkit
