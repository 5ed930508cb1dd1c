#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace antihom::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kInternal = 1, kConfig = 2, kPhysics = 3 };

/// Parses "0", "pi", "-pi/4", "0.5pi", "2*pi/3" or a plain number (radians).
double parse_angle(const std::string& text);

/// Runs one fully resolved command configuration and returns the written
/// output paths. This is what a manifest replays.
std::vector<std::string> execute(const std::string& command, const nlohmann::json& config, std::ostream& out,
                                 std::ostream& err);

/// Command-line entry point; never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace antihom::cli
