#pragma once

// Numerov marching on a Grid. Internal to the library.

#include "radialbc/eigensolver.hpp"

#include <cstddef>
#include <vector>

namespace radialbc::numerov {

/// w(r) tabulated on the grid for one equation, plus the Numerov
/// coefficient F in the grid's uniform variable:
///   uniform:  y = u,          F = w
///   log:      y = u / sqrt r, F = r^2 w + 1/4
struct Table
{
    Grid const* grid{nullptr};
    std::vector<double> w;
    std::vector<double> F;
    double h{0};
    /// Last index integrated; beyond it the decaying solution is below
    /// exp(-tail_exponent) of its turning-point size.
    std::size_t end{0};
    /// Matching index (outermost classical turning point, clamped).
    std::size_t match{0};
};

inline constexpr double tail_exponent = 200.0;
inline constexpr double overflow      = 1e100;

Table tabulate(RadialEquation const& eq, Grid const& grid);

/// y -> u at grid index i.
double to_u(Table const& t, std::size_t i, double y);
double from_u(Table const& t, std::size_t i, double u);

struct March
{
    std::vector<double> y; ///< indexed like the grid; untouched entries are 0
    double log_scale{0};
};

/// Outward march over [0, stop] seeded with y_0, y_1.
March outward(Table const& t, double y0, double y1, std::size_t stop);

/// Inward march over [stop, t.end] seeded from the WKB tail.
March inward(Table const& t, std::size_t stop);

/// Sign changes of y over [first, last].
int sign_changes(std::vector<double> const& y, std::size_t first, std::size_t last);

} // namespace radialbc::numerov
