#pragma once

#include "radialbc/eigensolver.hpp"
#include "radialbc/grid.hpp"
#include "radialbc/radial_model.hpp"
#include "radialbc/series.hpp"

#include <optional>
#include <vector>

namespace radialbc {

/// Radial Klein-Gordon problem with the vector Coulomb potential V = -alpha/r.
struct KGProblem
{
    KGProblem(double mass, double alpha, int l, Grid grid);

    double mass;
    double alpha;
    int l;
    Grid grid;
};

/// Effective second-order form at energy E:
///   u'' = [(m^2 - E^2) - 2 E alpha / r + (l(l+1) - alpha^2) / r^2] u
/// The origin is classified as for a Schroedinger problem with g = alpha^2.
struct KGEffective
{
    RadialEquation equation;
    IndicialData indicial;
    /// sqrt((l+1/2)^2 - alpha^2); empty when SuperCritical.
    std::optional<double> P_eff;
};

/// Throws DomainError unless |E| < m.
KGEffective kg_effective(KGProblem const& problem, double E);

/// Origin data only (independent of E).
IndicialData kg_classify(KGProblem const& problem);

/// Bound states with 0..n_max nodes, E in (0, m), increasing with node
/// count. Each level is found by a secant iteration on the matching defect
/// started from the nonrelativistic estimate; if that fails to land on the
/// requested node count, a bracketed search takes over.
///
/// Throws FallToCenter when alpha^2 > (l+1/2)^2, BoundaryModeViolation as
/// shoot_eigenvalue, KGIterationError when neither search converges.
std::vector<EigenResult> kg_spectrum(KGProblem const& problem, BoundaryMode mode, int n_max);

/// Single level with the given node count.
EigenResult kg_solve(KGProblem const& problem, BoundaryMode mode, int nodes);

/// The KG eigenfunction as a TestFunction (see eigenfunction()).
TestFunction kg_eigenfunction(KGProblem const& problem, EigenResult const& state);

} // namespace radialbc
