#pragma once

#include "radialbc/grid.hpp"
#include "radialbc/potential.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace radialbc {

/// Reduced radial problem u'' - l(l+1)/r^2 u + 2m [E - V] u = 0 (hbar = 1).
struct RadialProblem
{
    RadialProblem(double mass, int l, Potential potential, Grid grid);

    double mass;
    int l;
    Potential potential;
    Grid grid;
};

/// Which near-origin branches are allowed.
///   Strict     - only u(0) = 0 branches (exponent a > 0).
///   Permissive - anything square integrable at the origin (a > -1/2).
enum class BoundaryMode
{
    Strict,
    Permissive
};

std::string to_string(BoundaryMode m);
BoundaryMode boundary_mode_from_string(std::string const& s);

enum class OriginClass
{
    Regular,
    TransitiveSingular,
    SuperCritical,
    Degenerate
};

std::string to_string(OriginClass c);
OriginClass origin_class_from_string(std::string const& s);

/// Result of the indicial analysis u ~ r^a at r -> 0.
struct IndicialData
{
    OriginClass cls{OriginClass::Regular};
    int l{0};
    /// Effective inverse-square strength, g = -lim 2 m r^2 V.
    double g{0};
    /// (a_plus, a_minus) with a_plus >= a_minus; empty when SuperCritical.
    std::optional<std::pair<double, double>> exponents;
    /// sqrt((l + 1/2)^2 - g); TransitiveSingular and Degenerate only.
    std::optional<double> P;
    std::vector<double> strict_admissible;
    std::vector<double> permissive_admissible;
    bool ambiguous_strict{false};
    bool ambiguous_permissive{false};
    /// a_minus == 0: u(0) is finite but nonzero (P = 1/2). Counted as
    /// inadmissible under Strict.
    bool regime_boundary{false};

    bool ambiguous(BoundaryMode mode) const
    {
        return mode == BoundaryMode::Strict ? ambiguous_strict : ambiguous_permissive;
    }

    double a_plus() const;
    double a_minus() const;
    bool admits(double exponent, BoundaryMode mode) const;
};

inline constexpr double strict_threshold     = 0.0;
inline constexpr double permissive_threshold = -0.5;

/// Indicial classification for a given effective strength g and l. Shared
/// by the Schroedinger and Klein-Gordon paths.
IndicialData classify_indicial(double g, int l, bool regular);

/// Classify the origin of `problem`. SuperCritical is reported, not thrown;
/// UnsupportedSingularity propagates from origin_limit.
IndicialData classify_origin(RadialProblem const& problem);

/// Checks the IndicialData invariants; throws DomainError describing the
/// first violation.
void validate(IndicialData const& d);

} // namespace radialbc
