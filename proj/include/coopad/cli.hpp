#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "coopad/model.hpp"

namespace coopad {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitUsage = 64;

std::string version();

/// Runs one command. `args` excludes the program name. Primary output goes
/// to `out` unless --output names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

/// Formats a double with 15 significant digits, the CSV and manifest format.
std::string format_number(double v);

/// Record of one run, written next to every output file.
struct RunManifest {
    std::string command;
    ScenarioConfig config;
    std::vector<int> grid_steps;
    std::vector<std::string> outputs;

    nlohmann::json to_json() const;
};

}  // namespace coopad
