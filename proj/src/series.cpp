#include "radialbc/series.hpp"

#include "radialbc/errors.hpp"

#include <cmath>
#include <limits>

namespace radialbc {

RadialEquation schroedinger_equation(RadialProblem const& problem, double E)
{
    double const two_m = 2 * problem.mass;
    double const ll    = problem.l * (problem.l + 1.0);
    auto const near    = near_origin(problem.potential, problem.mass);

    RadialEquation eq;
    eq.origin.q = {ll - near.g, two_m * near.v_m1, two_m * (near.v0 - E), two_m * near.v1, two_m * near.v2};
    eq.w        = [pot = problem.potential, mass = problem.mass, two_m, ll, E](double r) {
        return ll / (r * r) + two_m * (evaluate_potential(pot, r, mass) - E);
    };
    return eq;
}

namespace {

bool resonant(double a, std::size_t j)
{
    return std::abs(double(j) * (2 * a + double(j) - 1)) < 1e-12;
}

/// Plain recurrence j (2a + j - 1) c_j = sum_{k>=1} q_k c_{j-k}. Stops (and
/// returns the resonant order) if it hits a vanishing denominator.
std::size_t plain_series(OriginExpansion const& o, double a, std::vector<double>& c)
{
    c.assign(SeriesStart::order, 0.0);
    c[0] = 1;
    for (std::size_t j = 1; j < SeriesStart::order; ++j) {
        if (resonant(a, j)) {
            return j;
        }
        double rhs = 0;
        for (std::size_t k = 1; k <= j; ++k) {
            rhs += o.q[k] * c[j - k];
        }
        c[j] = rhs / (double(j) * (2 * a + double(j) - 1));
    }
    return 0;
}

double growth_rate(std::vector<double> const& c, double extra)
{
    double rho = std::abs(extra);
    for (std::size_t j = 1; j < c.size(); ++j) {
        if (c[j] != 0) {
            rho = std::max(rho, std::pow(std::abs(c[j]), 1.0 / double(j)));
        }
    }
    return rho;
}

double power_sum(double a, std::vector<double> const& c, double r, int deriv)
{
    double s = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        double p = a + double(j);
        double f = 1;
        if (deriv >= 1) {
            f *= p;
        }
        if (deriv >= 2) {
            f *= p - 1;
        }
        if (f == 0 || c[j] == 0) {
            continue;
        }
        s += c[j] * f * std::pow(r, p - deriv);
    }
    return s;
}

} // namespace

SeriesStart series_start(OriginExpansion const& origin, double exponent, double other)
{
    double const q0 = origin.q[0];
    if (std::abs(exponent * (exponent - 1) - q0) > 1e-9 * std::max(1.0, std::abs(q0))) {
        throw DomainError("series start: exponent is not a root of the indicial equation");
    }
    SeriesStart s;
    s.exponent = exponent;

    std::size_t res = plain_series(origin, exponent, s.coefficients);
    if (res != 0) {
        // roots spaced by the integer res
        double const upper = exponent + double(res);
        if (std::abs(upper - other) > 1e-9) {
            throw DomainError("series start: resonance does not match the second indicial root");
        }
        plain_series(origin, upper, s.partner_coefficients);
        s.partner_exponent = upper;

        auto& d = s.coefficients;
        auto const& c = s.partner_coefficients;
        double sum = 0;
        for (std::size_t k = 1; k <= res; ++k) {
            sum += origin.q[k] * d[res - k];
        }
        s.log_coefficient = sum / (2 * upper - 1);
        d[res]            = 0;
        for (std::size_t j = res + 1; j < SeriesStart::order; ++j) {
            double rhs = 0;
            for (std::size_t k = 1; k <= j; ++k) {
                rhs += origin.q[k] * d[j - k];
            }
            rhs -= s.log_coefficient * c[j - res] * (2 * (upper + double(j - res)) - 1);
            d[j] = rhs / (double(j) * (2 * exponent + double(j) - 1));
        }
    }

    double rho = growth_rate(s.coefficients, s.log_coefficient);
    rho = std::max(rho, growth_rate(s.partner_coefficients, 0));
    // remainder ~ (rho r)^order below 1e-10
    s.valid_radius = rho > 0 ? std::pow(1e-10, 1.0 / double(SeriesStart::order)) / rho
                             : std::numeric_limits<double>::infinity();
    return s;
}

SeriesStart series_start(RadialProblem const& problem, IndicialData const& indicial, double branch, double E)
{
    if (indicial.cls == OriginClass::SuperCritical || !indicial.exponents) {
        throw FallToCenter("no Frobenius start: g exceeds (l+1/2)^2");
    }
    auto [ap, am] = *indicial.exponents;
    bool const is_plus  = std::abs(branch - ap) < 1e-12;
    bool const is_minus = std::abs(branch - am) < 1e-12;
    if (!is_plus && !is_minus) {
        throw DomainError("series start: branch is not an indicial exponent");
    }
    if (indicial.cls == OriginClass::Degenerate && !is_plus) {
        throw Unsupported("degenerate indicial root: the logarithmic branch is not constructed");
    }
    auto eq = schroedinger_equation(problem, E);
    return series_start(eq.origin, is_plus ? ap : am, is_plus ? am : ap);
}

double SeriesStart::value(double r) const
{
    double v = power_sum(exponent, coefficients, r, 0);
    if (log_coefficient != 0) {
        v += log_coefficient * power_sum(partner_exponent, partner_coefficients, r, 0) * std::log(r);
    }
    return v;
}

double SeriesStart::derivative(double r) const
{
    double v = power_sum(exponent, coefficients, r, 1);
    if (log_coefficient != 0) {
        double u1  = power_sum(partner_exponent, partner_coefficients, r, 0);
        double du1 = power_sum(partner_exponent, partner_coefficients, r, 1);
        v += log_coefficient * (du1 * std::log(r) + u1 / r);
    }
    return v;
}

double SeriesStart::second_derivative(double r) const
{
    double v = power_sum(exponent, coefficients, r, 2);
    if (log_coefficient != 0) {
        double u1   = power_sum(partner_exponent, partner_coefficients, r, 0);
        double du1  = power_sum(partner_exponent, partner_coefficients, r, 1);
        double d2u1 = power_sum(partner_exponent, partner_coefficients, r, 2);
        v += log_coefficient * (d2u1 * std::log(r) + 2 * du1 / r - u1 / (r * r));
    }
    return v;
}

} // namespace radialbc
