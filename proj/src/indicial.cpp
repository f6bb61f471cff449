#include "radialbc/radial_model.hpp"

#include "radialbc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace radialbc {

RadialProblem::RadialProblem(double mass_, int l_, Potential potential_, Grid grid_)
    : mass(mass_)
    , l(l_)
    , potential(std::move(potential_))
    , grid(std::move(grid_))
{
    if (!(mass > 0)) {
        throw DomainError("mass must be positive");
    }
    if (l < 0) {
        throw DomainError("angular momentum l must be a non-negative integer");
    }
}

std::string to_string(BoundaryMode m)
{
    return m == BoundaryMode::Strict ? "strict" : "permissive";
}

BoundaryMode boundary_mode_from_string(std::string const& s)
{
    if (s == "strict" || s == "Strict") {
        return BoundaryMode::Strict;
    }
    if (s == "permissive" || s == "Permissive") {
        return BoundaryMode::Permissive;
    }
    throw DomainError("unknown boundary mode '" + s + "'");
}

std::string to_string(OriginClass c)
{
    switch (c) {
        case OriginClass::Regular:
            return "Regular";
        case OriginClass::TransitiveSingular:
            return "TransitiveSingular";
        case OriginClass::SuperCritical:
            return "SuperCritical";
        case OriginClass::Degenerate:
            return "Degenerate";
    }
    return "?";
}

OriginClass origin_class_from_string(std::string const& s)
{
    for (auto c : {OriginClass::Regular, OriginClass::TransitiveSingular, OriginClass::SuperCritical,
                   OriginClass::Degenerate}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    throw DomainError("unknown origin class '" + s + "'");
}

double IndicialData::a_plus() const
{
    if (!exponents) {
        throw FallToCenter("no real indicial exponents (fall to center)");
    }
    return exponents->first;
}

double IndicialData::a_minus() const
{
    if (!exponents) {
        throw FallToCenter("no real indicial exponents (fall to center)");
    }
    return exponents->second;
}

bool IndicialData::admits(double exponent, BoundaryMode mode) const
{
    auto const& set = mode == BoundaryMode::Strict ? strict_admissible : permissive_admissible;
    return std::find(set.begin(), set.end(), exponent) != set.end();
}

IndicialData classify_indicial(double g, int l, bool regular)
{
    IndicialData d;
    d.l = l;
    d.g = regular ? 0.0 : g;

    double const half_l   = l + 0.5;
    double const critical = half_l * half_l;

    if (regular) {
        d.cls       = OriginClass::Regular;
        d.exponents = std::pair{double(l + 1), double(-l)};
    } else {
        double disc = critical - g;
        // g = (l+1/2)^2 is the double root; rounding noise below it still counts
        if (disc < 0) {
            d.cls = OriginClass::SuperCritical;
            return d;
        } else if (disc <= 4 * std::numeric_limits<double>::epsilon() * critical) {
            d.cls       = OriginClass::Degenerate;
            d.P         = 0.0;
            d.exponents = std::pair{0.5, 0.5};
        } else {
            double P    = std::sqrt(disc);
            d.cls       = OriginClass::TransitiveSingular;
            d.P         = P;
            d.exponents = std::pair{0.5 + P, 0.5 - P};
        }
    }

    auto [ap, am] = *d.exponents;
    for (double a : {ap, am}) {
        if (a > strict_threshold) {
            d.strict_admissible.push_back(a);
        }
        if (a > permissive_threshold) {
            d.permissive_admissible.push_back(a);
        }
    }
    d.ambiguous_strict     = d.strict_admissible.size() == 2;
    d.ambiguous_permissive = d.permissive_admissible.size() == 2;
    d.regime_boundary      = std::abs(am) < 1e-12;
    return d;
}

IndicialData classify_origin(RadialProblem const& problem)
{
    auto lim = origin_limit(problem.potential, problem.mass);
    return classify_indicial(lim.g_eff, problem.l, lim.regular);
}

void validate(IndicialData const& d)
{
    auto fail = [](std::string const& m) { throw DomainError("IndicialData invariant: " + m); };
    double const half_l = d.l + 0.5;
    if (d.l < 0) {
        fail("l < 0");
    }
    if (d.cls == OriginClass::SuperCritical) {
        if (d.exponents) {
            fail("SuperCritical must not carry exponents");
        }
        if (!(d.g > half_l * half_l)) {
            fail("SuperCritical requires g > (l+1/2)^2");
        }
        return;
    }
    if (!d.exponents) {
        fail("exponents missing");
    }
    auto [ap, am] = *d.exponents;
    if (ap < am) {
        fail("a_plus < a_minus");
    }
    double const tol = 1e-12 * std::max(1.0, std::abs(ap));
    switch (d.cls) {
        case OriginClass::Regular:
            if (std::abs(ap - (d.l + 1)) > tol || std::abs(am + d.l) > tol) {
                fail("Regular exponents must be (l+1, -l)");
            }
            break;
        case OriginClass::TransitiveSingular: {
            if (!d.P || !(*d.P > 0)) {
                fail("TransitiveSingular requires P > 0");
            }
            double P = *d.P;
            if (std::abs(ap - (0.5 + P)) > tol || std::abs(am - (0.5 - P)) > tol) {
                fail("exponents must be 1/2 +- P");
            }
            if (std::abs(P * P - (half_l * half_l - d.g)) > 1e-10 * std::max(1.0, half_l * half_l)) {
                fail("P^2 != (l+1/2)^2 - g");
            }
            break;
        }
        case OriginClass::Degenerate:
            if (!d.P || *d.P != 0.0 || ap != 0.5 || am != 0.5) {
                fail("Degenerate requires P = 0 and exponents (1/2, 1/2)");
            }
            break;
        case OriginClass::SuperCritical:
            break;
    }
    auto check_set = [&](std::vector<double> const& set, double threshold, char const* what) {
        std::vector<double> expect;
        for (double a : {ap, am}) {
            if (a > threshold) {
                expect.push_back(a);
            }
        }
        if (set.size() != expect.size() || !std::equal(set.begin(), set.end(), expect.begin(),
                                                       [](double x, double y) { return std::abs(x - y) < 1e-12; })) {
            fail(std::string(what) + " set does not match exponent thresholds");
        }
    };
    check_set(d.strict_admissible, strict_threshold, "strict_admissible");
    check_set(d.permissive_admissible, permissive_threshold, "permissive_admissible");
    for (double a : d.strict_admissible) {
        if (std::none_of(d.permissive_admissible.begin(), d.permissive_admissible.end(),
                         [a](double b) { return std::abs(a - b) < 1e-12; })) {
            fail("strict_admissible not a subset of permissive_admissible");
        }
    }
    if (d.ambiguous_strict != (d.strict_admissible.size() == 2) ||
        d.ambiguous_permissive != (d.permissive_admissible.size() == 2)) {
        fail("ambiguous flags inconsistent with admissible sets");
    }
}

} // namespace radialbc
