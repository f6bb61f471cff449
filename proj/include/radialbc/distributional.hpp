#pragma once

#include "radialbc/grid.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace radialbc {

/// Radial function with its first two derivatives, defined on r >= 0.
/// `d1` may be left empty; callers that need it then fall back to a
/// five-point difference.
struct TestFunction
{
    std::string label;
    std::function<double(double)> f;
    std::function<double(double)> d1;
    std::function<double(double)> d2;

    double operator()(double r) const { return f(r); }
};

/// Builds a TestFunction from samples u(r_i) on a grid. Values and
/// derivatives come from six-point Lagrange interpolation in the grid's
/// uniform coordinate. `origin` (value, d1, d2 closures) covers [0, r_min].
TestFunction sampled_test_function(std::string label, Grid const& grid, std::vector<double> values,
                                   std::optional<TestFunction> origin = std::nullopt);

/// The test-function gallery used by the CLI and the acceptance suite.
namespace gallery {
TestFunction gaussian(double scale = 1.0); ///< c exp(-r^2)
TestFunction r2_exp();                     ///< r^2 exp(-r)
TestFunction exp_decay();                  ///< exp(-r)
TestFunction r_exp();                      ///< r exp(-r)
TestFunction cube();                       ///< r^3
TestFunction sine();                       ///< sin(r)

/// Looks up one of: gaussian, r2-exp, exp, r-exp, cube, sin.
TestFunction by_name(std::string const& name, double scale = 1.0);
std::vector<std::string> names();
} // namespace gallery

struct IdentityReport
{
    std::string check; ///< "delta-weight" or "operator-identity"
    double value{0};
    double expected{0};
    double abs_error{0};
    std::size_t quadrature_points{0};
    bool converged{false};
    double tolerance{1e-6};
    /// (quadrature points, value) for each refinement level.
    std::vector<std::pair<double, double>> sequence;
    double observed_order{0};

    /// Integration radius R (delta weight) or ball radius a (operator identity).
    double radius{0};
    /// 4 pi (phi(R) + R phi'(R)) subtracted when phi is not negligible at R.
    double boundary_flux{0};
    /// Operator identity only: 4 pi (a u'(a) - u(a)) and 4 pi int_0^a r u'' dr.
    double flux_term{0};
    double volume_term{0};
};

/// Default relative tolerance for IdentityReport::converged.
inline constexpr double identity_tolerance = 1e-6;

/// Weak pairing of Delta(1/r) with phi:
///   W = int_0^R (1/r) [phi'' + (2/r) phi'] 4 pi r^2 dr,
/// expected -4 pi phi(0). Throws QuadratureError when the refinement
/// sequence does not settle.
IdentityReport weak_delta_weight(TestFunction const& phi, double R, std::size_t n = 8,
                                 double tolerance = identity_tolerance);

/// D(a) = 4 pi (a u'(a) - u(a)) - 4 pi int_0^a r u''(r) dr, i.e. the ball
/// integral of Delta(u/r) minus that of (1/r) u''. Equals -4 pi u(0) for
/// every a > 0.
IdentityReport operator_identity_residual(TestFunction const& u, double a, std::size_t n = 8,
                                          double tolerance = identity_tolerance);

struct PointwiseReport
{
    double max_abs_deviation{0};
    double at_r{0};
    std::size_t points{0};
};

/// Compares R'' + (2/r) R' (with R = u/r, expanded through u, u', u'') with
/// u''/r at every grid point. Arithmetic is carried in long double.
PointwiseReport pointwise_identity_check(TestFunction const& u, Grid const& grid);

/// Five-point central difference with step h.
double five_point_derivative(std::function<double(double)> const& f, double r, double h);

} // namespace radialbc
