#include "radialbc/distributional.hpp"

#include "radialbc/errors.hpp"
#include "radialbc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>

namespace radialbc {

namespace {

constexpr double four_pi = 4 * std::numbers::pi;

/// Fornberg finite-difference weights for derivatives 0..2 at x0 over
/// nodes x[0..n).
template <std::size_t N>
std::array<std::array<double, N>, 3> fornberg(double x0, std::array<double, N> const& x)
{
    std::array<std::array<double, N>, 3> c{};
    double c1 = 1, c4 = x[0] - x0;
    c[0][0]   = 1;
    for (std::size_t i = 1; i < N; ++i) {
        std::size_t mn = std::min<std::size_t>(i, 2);
        double c2 = 1, c5 = c4;
        c4 = x[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) {
                    c[k][i] = c1 * (double(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) {
                c[k][j] = (c4 * c[k][j] - double(k) * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

struct SampledData
{
    Grid grid;
    std::vector<double> u;
    std::optional<TestFunction> origin;

    /// Value and derivatives with respect to r at r.
    std::array<double, 3> eval(double r) const
    {
        if (r < grid.r_min()) {
            if (!origin) {
                throw RangeError("sampled function evaluated below r_min without an origin series");
            }
            return {origin->f(r), origin->d1(r), origin->d2(r)};
        }
        if (r > grid.r_max() * (1 + 1e-14)) {
            throw RangeError("sampled function evaluated beyond r_max");
        }
        bool const logx = grid.kind() == GridKind::LogSpaced;
        double x        = logx ? std::log(r) : r;
        double x0       = grid.x(0);
        auto n          = static_cast<std::ptrdiff_t>(grid.size());
        auto i          = static_cast<std::ptrdiff_t>(std::floor((x - x0) / grid.step()));
        std::ptrdiff_t first = std::clamp<std::ptrdiff_t>(i - 2, 0, n - 6);
        std::array<double, 6> xs{};
        for (std::size_t k = 0; k < 6; ++k) {
            xs[k] = grid.x(static_cast<std::size_t>(first) + k);
        }
        auto w = fornberg(x, xs);
        std::array<double, 3> d{};
        for (std::size_t k = 0; k < 6; ++k) {
            double uk = u[static_cast<std::size_t>(first) + k];
            for (std::size_t m = 0; m < 3; ++m) {
                d[m] += w[m][k] * uk;
            }
        }
        if (!logx) {
            return d;
        }
        // x = ln r: u_r = u_x / r, u_rr = (u_xx - u_x) / r^2
        return {d[0], d[1] / r, (d[2] - d[1]) / (r * r)};
    }
};

} // namespace

TestFunction sampled_test_function(std::string label, Grid const& grid, std::vector<double> values,
                                   std::optional<TestFunction> origin)
{
    if (values.size() != grid.size()) {
        throw DomainError("sampled test function: sample count does not match grid");
    }
    if (grid.size() < 6) {
        throw DomainError("sampled test function needs at least six samples");
    }
    auto data = std::make_shared<SampledData const>(SampledData{grid, std::move(values), std::move(origin)});
    TestFunction t;
    t.label = std::move(label);
    t.f     = [data](double r) { return data->eval(r)[0]; };
    t.d1    = [data](double r) { return data->eval(r)[1]; };
    t.d2    = [data](double r) { return data->eval(r)[2]; };
    return t;
}

namespace gallery {

TestFunction gaussian(double c)
{
    return {"gaussian", [c](double r) { return c * std::exp(-r * r); },
            [c](double r) { return -2 * c * r * std::exp(-r * r); },
            [c](double r) { return c * (4 * r * r - 2) * std::exp(-r * r); }};
}

TestFunction r2_exp()
{
    return {"r2-exp", [](double r) { return r * r * std::exp(-r); },
            [](double r) { return (2 * r - r * r) * std::exp(-r); },
            [](double r) { return (2 - 4 * r + r * r) * std::exp(-r); }};
}

TestFunction exp_decay()
{
    return {"exp", [](double r) { return std::exp(-r); }, [](double r) { return -std::exp(-r); },
            [](double r) { return std::exp(-r); }};
}

TestFunction r_exp()
{
    return {"r-exp", [](double r) { return r * std::exp(-r); }, [](double r) { return (1 - r) * std::exp(-r); },
            [](double r) { return (r - 2) * std::exp(-r); }};
}

TestFunction cube()
{
    return {"cube", [](double r) { return r * r * r; }, [](double r) { return 3 * r * r; },
            [](double r) { return 6 * r; }};
}

TestFunction sine()
{
    return {"sin", [](double r) { return std::sin(r); }, [](double r) { return std::cos(r); },
            [](double r) { return -std::sin(r); }};
}

std::vector<std::string> names()
{
    return {"gaussian", "r2-exp", "exp", "r-exp", "cube", "sin"};
}

TestFunction by_name(std::string const& name, double scale)
{
    TestFunction t;
    if (name == "gaussian") {
        t = gaussian(scale);
    } else if (name == "r2-exp") {
        t = r2_exp();
    } else if (name == "exp") {
        t = exp_decay();
    } else if (name == "r-exp") {
        t = r_exp();
    } else if (name == "cube") {
        t = cube();
    } else if (name == "sin") {
        t = sine();
    } else {
        throw DomainError("unknown test function '" + name + "'");
    }
    if (name != "gaussian" && scale != 1.0) {
        auto base = t;
        t.f       = [base, scale](double r) { return scale * base.f(r); };
        t.d1      = [base, scale](double r) { return scale * base.d1(r); };
        t.d2      = [base, scale](double r) { return scale * base.d2(r); };
    }
    return t;
}

} // namespace gallery

double five_point_derivative(std::function<double(double)> const& f, double r, double h)
{
    return (f(r - 2 * h) - 8 * f(r - h) + 8 * f(r + h) - f(r + 2 * h)) / (12 * h);
}

namespace {

void finish(IdentityReport& rep, quadrature::DoublingResult const& q, double tolerance)
{
    rep.quadrature_points = q.points;
    rep.sequence          = q.sequence;
    rep.observed_order    = q.observed_order;
    rep.tolerance         = tolerance;
    rep.abs_error         = std::abs(rep.value - rep.expected);
    rep.converged         = rep.abs_error / std::max(1.0, std::abs(rep.expected)) < tolerance;
}

} // namespace

IdentityReport weak_delta_weight(TestFunction const& phi, double R, std::size_t n, double tolerance)
{
    if (!(R > 0)) {
        throw DomainError("delta weight: integration radius must be positive");
    }
    if (!phi.f || !phi.d2) {
        throw DomainError("delta weight: test function needs f and f''");
    }
    auto d1 = phi.d1 ? phi.d1 : [&phi, R](double r) { return five_point_derivative(phi.f, r, R * 1e-4); };

    // (1/r)(phi'' + 2 phi'/r) 4 pi r^2 = 4 pi (r phi'' + 2 phi')
    auto integrand = [&](double r) { return four_pi * (r * phi.d2(r) + 2 * d1(r)); };
    auto q         = quadrature::doubling(integrand, 0.0, R, n);
    if (!q.converged) {
        throw QuadratureError("delta weight quadrature did not converge", q.sequence);
    }

    IdentityReport rep;
    rep.check    = "delta-weight";
    rep.radius   = R;
    rep.expected = -four_pi * phi.f(0.0);

    double phi0  = std::abs(phi.f(0.0));
    double edge  = std::max(std::abs(phi.f(R)), std::abs(R * d1(R)));
    bool negligible = phi0 != 0 ? edge < 1e-12 * phi0 : edge < 1e-12;
    rep.boundary_flux = negligible ? 0.0 : four_pi * (phi.f(R) + R * d1(R));
    rep.value         = q.value - rep.boundary_flux;
    finish(rep, q, tolerance);
    return rep;
}

IdentityReport operator_identity_residual(TestFunction const& u, double a, std::size_t n, double tolerance)
{
    if (!(a > 0)) {
        throw DomainError("operator identity: ball radius must be positive");
    }
    if (!u.f || !u.d2) {
        throw DomainError("operator identity: test function needs f and f''");
    }
    double ua  = u.f(a);
    double dua = u.d1 ? u.d1(a) : five_point_derivative(u.f, a, a * 1e-4);

    auto integrand = [&](double r) { return four_pi * r * u.d2(r); };
    auto q         = quadrature::doubling(integrand, 0.0, a, n);
    if (!q.converged) {
        throw QuadratureError("operator identity quadrature did not converge", q.sequence);
    }

    IdentityReport rep;
    rep.check       = "operator-identity";
    rep.radius      = a;
    rep.flux_term   = four_pi * (a * dua - ua);
    rep.volume_term = q.value;
    rep.value       = rep.flux_term - rep.volume_term;
    rep.expected    = -four_pi * u.f(0.0);
    finish(rep, q, tolerance);
    return rep;
}

PointwiseReport pointwise_identity_check(TestFunction const& u, Grid const& grid)
{
    if (!u.f || !u.d1 || !u.d2) {
        throw DomainError("pointwise identity: analytic u, u', u'' required");
    }
    PointwiseReport rep;
    rep.points = grid.size();
    for (double rd : grid.points()) {
        long double r  = rd;
        long double v  = u.f(rd);
        long double v1 = u.d1(rd);
        long double v2 = u.d2(rd);
        // R = u/r
        long double R1  = v1 / r - v / (r * r);
        long double R2  = v2 / r - 2 * v1 / (r * r) + 2 * v / (r * r * r);
        long double lhs = R2 + 2 * R1 / r;
        long double rhs = v2 / r;
        double dev      = static_cast<double>(std::fabs(lhs - rhs));
        if (dev > rep.max_abs_deviation) {
            rep.max_abs_deviation = dev;
            rep.at_r              = rd;
        }
    }
    return rep;
}

} // namespace radialbc
