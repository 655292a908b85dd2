#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gompgof/distributions.hpp"
#include "gompgof/simulation.hpp"

namespace gompgof::cli {

/// Exit codes: 0 success, 1 numeric failure, 2 usage or data error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `gompgof` tool (subcommands fit, gof, simulate,
/// lifetable, sample).
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a family description such as {"gompertz", "eta=1", "b=2"},
/// {"lognormal", "sigma=0.5"} or {"uniform", "0", "5"}.
AlternativeSpec parse_family(const std::vector<std::string>& tokens);
AlternativeSpec parse_family(const std::string& text);

/// Flat key=value simulation config (see README for keys).
SimulationConfig parse_simulation_config(std::istream& in);

/// Gompertz null scenarios and the alternatives of the reference power study.
std::vector<AlternativeSpec> reference_scenarios();

}  // namespace gompgof::cli
