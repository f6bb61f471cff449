#pragma once

#include "radialbc/eigensolver.hpp"
#include "radialbc/grid.hpp"
#include "radialbc/potential.hpp"
#include "radialbc/radial_model.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace radialbc::cli {

/// Bad flags, unknown keys or inconsistent settings. Exit status 2.
class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class Command
{
    Classify,
    DeltaCheck,
    IdentityCheck,
    Solve,
    Spectrum,
    KgSolve
};

std::string to_string(Command c);
Command command_from_string(std::string const& s);

enum class OutputFormat
{
    Json,
    Csv,
    Table
};

std::string to_string(OutputFormat f);

struct PotentialSpec
{
    /// coulomb | harmonic | inverse-square | free | table
    std::string kind{"coulomb"};
    std::optional<double> alpha;
    std::optional<double> omega;
    std::optional<double> g;
    /// Two whitespace-separated columns r V per line.
    std::string table_path;
};

/// Inclusive linear sweep of one parameter; only g is supported.
struct Sweep
{
    std::string parameter{"g"};
    double from{0};
    double to{0};
    int count{0};

    std::vector<double> values() const;
};

struct RunConfig
{
    Command command{Command::Classify};
    PotentialSpec potential;
    double mass{1};
    int l{0};
    BoundaryMode mode{BoundaryMode::Strict};
    BranchSelector branch;

    GridKind grid_kind{GridKind::LogSpaced};
    /// Empty means automatic (see resolve_grid).
    std::optional<double> r_min;
    std::optional<double> r_max;
    std::size_t points{4000};

    int nodes{0};
    int n_max{2};
    std::optional<double> e_min;
    std::optional<double> e_max;
    /// Solve only: rerun on a grid scaled by this factor and report E ratio.
    std::optional<double> rescale;
    bool samples{false};

    std::string test_function{"gaussian"};
    /// Integration radius (delta-check, default 10) or ball radius (identity-check, default 1).
    std::optional<double> radius;
    std::optional<Sweep> sweep;

    /// Convergence tolerance of the identity checks.
    double tolerance{1e-6};

    OutputFormat output{OutputFormat::Table};
    std::string out_path;
};

/// Every key accepted in a config file; flags use the same names with "--".
std::vector<std::string> const& known_keys();

/// key = value lines, '#' starts a comment.
std::map<std::string, std::string> read_config_file(std::string const& path);

/// Builds a RunConfig from key/value settings (command included as
/// "command"). `env_tolerance` is the raw RADIALBC_TOLERANCE value.
RunConfig resolve(std::map<std::string, std::string> const& settings,
                  std::optional<std::string> const& env_tolerance = std::nullopt);

/// Parses argv (argv[0] is skipped). `--config FILE` is read first, flags
/// override it. Reads RADIALBC_TOLERANCE from the environment.
/// Throws UsageError; returns nullopt after printing help.
std::optional<RunConfig> parse_config(std::vector<std::string> const& args);

Potential make_potential(PotentialSpec const& spec);

/// Natural length of the configured problem (1 when the potential has none).
double length_scale(RunConfig const& cfg);

/// Grid with defaults filled in: r_min = 1e-6 L and r_max from the
/// potential kind (Coulomb 30 L n^2 for principal number n of the highest
/// requested state, oscillator 10 L, tabulated the last sample, others 30 L).
Grid resolve_grid(RunConfig const& cfg);

} // namespace radialbc::cli
