#pragma once

#include "radialbc/cli/config.hpp"
#include "radialbc/cli/report.hpp"

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace radialbc::cli {

inline constexpr int exit_ok     = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_usage  = 2;

/// Default energy window for solve/spectrum: from the bottom of the
/// effective potential on the grid (floored at -1e4 / (m L^2)) up to the
/// asymptotic threshold, or the largest potential value on the grid when the
/// potential is confining.
std::pair<double, double> energy_window(RunConfig const& cfg, RadialProblem const& problem);

/// Runs the command. Library errors are caught and reported with exit
/// status 1; UsageError propagates.
std::pair<int, Report> execute(RunConfig const& cfg);

/// Full front end: parse, run, write to stdout or --out. Returns the exit status.
int main_entry(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

} // namespace radialbc::cli
