#include "radialbc/fd_oracle.hpp"

#include "radialbc/errors.hpp"

#include <lapacke.h>

#include <vector>

namespace radialbc {

FdSpectrum fd_oracle_spectrum(RadialProblem const& problem, BoundaryMode mode, int n_eigs)
{
    if (mode != BoundaryMode::Strict) {
        throw Unsupported("finite-difference oracle is Strict-only");
    }
    if (problem.grid.kind() != GridKind::Uniform) {
        throw DomainError("finite-difference oracle needs a uniform grid");
    }
    auto const n = static_cast<lapack_int>(problem.grid.size());
    if (n_eigs < 1 || n_eigs > n) {
        throw DomainError("requested eigenvalue count out of range");
    }

    FdSpectrum out;
    double const r_max = problem.grid.r_max();
    double const h     = r_max / static_cast<double>(n + 1);
    double const m     = problem.mass;
    double const ll    = problem.l * (problem.l + 1.0);
    out.step           = h;
    out.unknowns       = static_cast<std::size_t>(n);
    if (n < 200) {
        out.warnings.push_back("OracleResolutionWarning: only " + std::to_string(n) +
                               " points; O(h^2) error may dominate");
    }

    std::vector<double> diag(n), off(n - 1, 0.0);
    double const kinetic = 1.0 / (2 * m * h * h);
    for (lapack_int i = 0; i < n; ++i) {
        double r = h * static_cast<double>(i + 1);
        diag[i]  = 2 * kinetic + evaluate_potential(problem.potential, r, m) + ll / (2 * m * r * r);
    }
    for (auto& o : off) {
        o = -kinetic;
    }

    // lowest n_eigs only; no eigenvectors
    lapack_int found = 0;
    std::vector<double> ev(n);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1, n_eigs,
                                     0.0, &found, ev.data(), nullptr, 1, support.data());
    if (info != 0 || found != n_eigs) {
        throw ConvergenceError("tridiagonal eigensolver failed (info = " + std::to_string(info) + ")");
    }
    out.energies.assign(ev.begin(), ev.begin() + n_eigs);
    return out;
}

} // namespace radialbc
