#pragma once

#include "radialbc/radial_model.hpp"

#include <string>
#include <vector>

namespace radialbc {

struct FdSpectrum
{
    std::vector<double> energies;
    double step{0};
    std::size_t unknowns{0};
    /// "OracleResolutionWarning: ..." entries when the mesh is coarse.
    std::vector<std::string> warnings;
};

/// Independent reference spectrum: three-point finite differences for
///   -(1/2m) u'' + [V + l(l+1)/(2 m r^2)] u = E u
/// on r_i = i h, i = 1..n (h = r_max / (n + 1), n = grid.size()), with
/// u = 0 at r = 0 and r = r_max. The wall at r = 0 is the discrete
/// u(0) = 0 condition, so only Strict mode is available.
/// The n_eigs lowest eigenvalues come from a symmetric tridiagonal solver.
FdSpectrum fd_oracle_spectrum(RadialProblem const& problem, BoundaryMode mode, int n_eigs);

/// Richardson extrapolation of an O(h^2) quantity from steps h and h/2.
inline double richardson_h2(double coarse, double fine)
{
    return (4 * fine - coarse) / 3;
}

} // namespace radialbc
