#pragma once

#include "radialbc/distributional.hpp"
#include "radialbc/radial_model.hpp"
#include "radialbc/series.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace radialbc {

/// Which near-origin data seeds the outward integration.
///   Principal - the upper exponent a_plus alone.
///   Irregular - the lower exponent a_minus alone.
///   Mix       - (r/r_min)^{a_plus} + ratio (r/r_min)^{a_minus} (series
///               corrections included). The ratio is dimensionless relative
///               to r_min, so rescaling the grid rescales the boundary data.
struct BranchSelector
{
    enum class Kind
    {
        Principal,
        Irregular,
        Mix
    };

    Kind kind{Kind::Principal};
    double ratio{0};

    static BranchSelector principal() { return {}; }
    static BranchSelector irregular() { return {Kind::Irregular, 0}; }
    static BranchSelector mix(double ratio) { return {Kind::Mix, ratio}; }

    /// True when the lower exponent takes part in the seed.
    bool uses_lower() const { return kind == Kind::Irregular || (kind == Kind::Mix && ratio != 0); }
};

std::string to_string(BranchSelector const& b);

/// One term amplitude * series(r) of the solution on [0, r_min].
struct OriginTerm
{
    SeriesStart series;
    double amplitude{0};
};

struct EigenResult
{
    double E{0};
    int nodes{0};
    std::vector<double> r;
    /// u on the grid, normalised to int_0^{r_max} u^2 dr = 1.
    std::vector<double> u_samples;
    double match_defect{0};
    double matching_radius{0};
    /// Leading exponent of the seed (a_minus whenever the lower branch is used).
    double branch{0};
    BranchSelector selector;
    BoundaryMode mode{BoundaryMode::Strict};
    int iterations{0};
    /// Solution on [0, r_min] in the same normalisation as u_samples.
    std::vector<OriginTerm> origin;
    /// Integrated norm including the series segment (1 up to rounding).
    double norm{1};
};

/// Checks the EigenResult invariants; throws DomainError on the first violation.
void validate(EigenResult const& e, double match_tolerance = 1e-8);

enum class Direction
{
    Outward,
    Inward
};

struct RadialSolution
{
    std::vector<double> r;
    std::vector<double> u;
    std::vector<double> du;
    /// Natural log of the factor divided out by overflow rescaling.
    double log_scale{0};
    /// Grid indices actually integrated [first, last].
    std::size_t first{0};
    std::size_t last{0};
};

/// Marches u'' = w u on the problem grid with Numerov (in x = ln r on
/// log grids). Outward starts from the Frobenius series at r_min; inward
/// starts from the decaying WKB tail at r_max and throws AsymptoticsError
/// when w(r_max) <= 0.
RadialSolution integrate_radial(RadialProblem const& problem, double E, Direction direction,
                                BranchSelector branch = BranchSelector::principal());

/// Bound state with `nodes` interior zeros by shooting in E.
///
/// Throws BoundaryModeViolation when the requested branch is not admitted
/// under `mode`, FallToCenter for supercritical origins and
/// NoEigenvalueInWindow when no state with that node count is bracketed
/// (after up to eight doublings of the window).
EigenResult shoot_eigenvalue(RadialProblem const& problem, BoundaryMode mode, BranchSelector branch, int nodes,
                             std::pair<double, double> E_window);

/// States with node counts 0..n_max found in the window, strictly
/// increasing in E. Stops at the first node count without a state.
std::vector<EigenResult> spectrum(RadialProblem const& problem, BoundaryMode mode, BranchSelector branch, int n_max,
                                  std::pair<double, double> E_window);

/// The eigenfunction as a TestFunction: series below r_min, interpolated
/// samples above, u'' = w u from the equation.
TestFunction eigenfunction(RadialProblem const& problem, EigenResult const& state);
TestFunction eigenfunction(RadialEquation const& eq, Grid const& grid, EigenResult const& state);

struct IntegrabilityReport
{
    bool integrable{false};
    /// (lower limit delta, int_delta^epsilon r^{2a} dr) for shrinking delta.
    std::vector<std::pair<double, double>> partial_integrals;
};

/// int_0^epsilon r^{2a} dr < infinity, i.e. a > -1/2.
IntegrabilityReport integrability_check(double exponent, double epsilon = 1.0);

/// Ratio E(grid) / E(grid scaled by s) for the matched state; equals s^2
/// for a scale-invariant problem whose only length comes from the grid.
struct RescalingDiagnostic
{
    double E{0};
    double E_scaled{0};
    double scale{1};
    double ratio{0};
    double relative_deviation{0}; ///< |ratio / s^2 - 1|
};

RescalingDiagnostic rescaling_diagnostic(RadialProblem const& problem, BoundaryMode mode, BranchSelector branch,
                                         int nodes, std::pair<double, double> E_window, double scale);

/// Low-level shooting on a family of equations E -> (u'' = w_E u). The family
/// must have w decreasing in E for every r so that node counts are
/// monotone. Used by the Schroedinger and Klein-Gordon front ends.
namespace shooting {

struct Family
{
    std::function<RadialEquation(double)> at;
    IndicialData indicial;
    Grid grid;
    /// Largest E admitted by the inward decaying tail (+inf if unbounded).
    double threshold{0};
};

/// Gate the branch against the mode; returns the seed exponent.
double check_branch(IndicialData const& indicial, BoundaryMode mode, BranchSelector branch);

/// Interior zeros of the outward solution up to the practical end of the grid.
int count_nodes(Family const& family, BranchSelector branch, double E);

/// Normalised matching mismatch in [-1, 1]; zero at an eigenvalue.
double matching_function(Family const& family, BranchSelector branch, double E);

/// Node-count bisection until [E_lo, E_hi] holds exactly the state with
/// `nodes` zeros. Returns nullopt when the window (and its expansions) has
/// none.
std::optional<std::pair<double, double>> bracket(Family const& family, BranchSelector branch, int nodes,
                                                 std::pair<double, double> window, int expansions = 8);

/// Matched state at energy E (no root search).
EigenResult assemble(Family const& family, BoundaryMode mode, BranchSelector branch, double E);

/// Full search: bracket, root of the matching function, assemble.
EigenResult solve(Family const& family, BoundaryMode mode, BranchSelector branch, int nodes,
                  std::pair<double, double> window);

} // namespace shooting

} // namespace radialbc
