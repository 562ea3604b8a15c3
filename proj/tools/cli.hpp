#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace mdde::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv, runs the subcommand and returns the process exit code.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out,
                       std::ostream& err);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

/// Pretty-printed JSON with sorted keys; throws on I/O failure.
void write_manifest(const nlohmann::json& manifest, const std::string& path);

/// Builds the manifest skeleton: tool, version, command line and artifacts.
nlohmann::json make_manifest(const std::vector<std::string>& args,
                             const std::string& subcommand, nlohmann::json config,
                             const std::vector<std::string>& artifacts,
                             double wall_clock_seconds);

}  // namespace mdde::cli
