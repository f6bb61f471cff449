#pragma once

#include "radialbc/radial_model.hpp"

#include <array>
#include <functional>
#include <vector>

namespace radialbc {

/// Small-r expansion of r^2 w(r) for the second-order form u'' = w(r) u:
///   r^2 w(r) = q[0] + q[1] r + q[2] r^2 + q[3] r^3 + q[4] r^4 + ...
/// q[0] = a(a-1) for either indicial exponent a.
struct OriginExpansion
{
    std::array<double, 5> q{};
};

/// u'' = w(r) u together with the small-r expansion of w.
struct RadialEquation
{
    std::function<double(double)> w;
    OriginExpansion origin;
};

/// Schroedinger form: w = l(l+1)/r^2 + 2m (V - E).
RadialEquation schroedinger_equation(RadialProblem const& problem, double E);

/// Truncated Frobenius solution u = r^a sum_j c_j r^j (c_0 = 1).
///
/// When the exponents differ by an integer s and the recurrence is resonant
/// at order s, the lower branch picks up the term
/// log_coefficient * u_partner(r) ln r, where u_partner is the upper branch
/// (stored in partner_exponent / partner_coefficients).
struct SeriesStart
{
    static constexpr std::size_t order = 5; ///< c_0 .. c_4

    double exponent{0};
    std::vector<double> coefficients;
    /// Truncation remainder is estimated below 1e-10 (relative) for r < valid_radius.
    double valid_radius{0};

    double log_coefficient{0};
    double partner_exponent{0};
    std::vector<double> partner_coefficients;

    double value(double r) const;
    double derivative(double r) const;
    double second_derivative(double r) const;
};

/// Frobenius start for the branch with exponent `exponent`; `other` is the
/// second root of the indicial equation.
/// Throws Unsupported when the two roots coincide and the log branch is
/// requested, DomainError when `exponent` is not a root.
SeriesStart series_start(OriginExpansion const& origin, double exponent, double other);

/// Same for a Schroedinger problem at energy E. Throws FallToCenter for
/// SuperCritical origins.
SeriesStart series_start(RadialProblem const& problem, IndicialData const& indicial, double branch, double E);

} // namespace radialbc
