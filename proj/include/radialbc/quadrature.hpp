#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace radialbc::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule
{
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t order() const { return nodes.size(); }
};

Rule gauss_legendre(std::size_t n);

using Integrand = std::function<double(double)>;

/// Composite rule on `panels` equal panels of [a, b].
double composite(Integrand const& f, double a, double b, std::size_t panels, Rule const& rule);

struct AdaptiveResult
{
    double value{0};
    double error_estimate{0};
    std::size_t evaluations{0};
};

/// Recursive bisection with a 7-point Gauss-Legendre panel checked against
/// its two halves. Intervals that fail to settle are split, which
/// concentrates panels where the integrand varies fastest (for the radial
/// integrands here: toward r = 0).
AdaptiveResult adaptive(Integrand const& f, double a, double b, double abs_tol = 1e-9, double rel_tol = 1e-8,
                        int max_depth = 40);

struct DoublingResult
{
    double value{0};
    std::size_t points{0};
    bool converged{false};
    /// (quadrature points, value) per refinement level.
    std::vector<std::pair<double, double>> sequence;
    /// log2 of successive difference ratios, from the last level resolved
    /// above round-off; 0 when not enough levels.
    double observed_order{0};
};

/// Composite 3-point Gauss-Legendre on n, 2n, 4n, ... panels until two
/// successive levels agree within abs_tol + rel_tol |value|.
DoublingResult doubling(Integrand const& f, double a, double b, std::size_t initial_panels, double abs_tol = 1e-9,
                        double rel_tol = 1e-8, int max_levels = 18);

} // namespace radialbc::quadrature
