#include "radialbc/errors.hpp"
#include "radialbc/radial_model.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace radialbc;

namespace {

RadialProblem problem(Potential p, int l = 0)
{
    return RadialProblem(1.0, l, std::move(p), Grid(GridKind::LogSpaced, 1e-6, 30, 400));
}

bool contains(std::vector<double> const& v, double x)
{
    for (double y : v) {
        if (y == x) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("Coulomb l=0 is regular with exponents (1, 0)")
{
    auto d = classify_origin(problem(Coulomb{1}));
    CHECK(d.cls == OriginClass::Regular);
    CHECK(d.a_plus() == 1.0);
    CHECK(d.a_minus() == 0.0);
    CHECK(d.strict_admissible == std::vector<double>{1.0});
    CHECK(d.permissive_admissible.size() == 2);
    CHECK_FALSE(d.ambiguous(BoundaryMode::Strict));
    CHECK(d.ambiguous(BoundaryMode::Permissive));
    CHECK(d.regime_boundary);
}

TEST_CASE("inverse square g=0.15")
{
    auto d = classify_origin(problem(InverseSquare{0.15}));
    CHECK(d.cls == OriginClass::TransitiveSingular);
    CHECK(*d.P == doctest::Approx(0.316227766016838).epsilon(1e-14));
    CHECK(d.a_plus() == doctest::Approx(0.816227766016838).epsilon(1e-14));
    CHECK(d.a_minus() == doctest::Approx(0.183772233983162).epsilon(1e-14));
    CHECK(d.strict_admissible.size() == 2);
    CHECK(d.ambiguous(BoundaryMode::Strict));
}

TEST_CASE("supercritical and degenerate")
{
    auto sc = classify_origin(problem(InverseSquare{0.40}));
    CHECK(sc.cls == OriginClass::SuperCritical);
    CHECK_FALSE(sc.exponents.has_value());
    CHECK_THROWS_AS(sc.a_plus(), FallToCenter);

    auto dg = classify_origin(problem(InverseSquare{0.25}));
    CHECK(dg.cls == OriginClass::Degenerate);
    CHECK(*dg.P == 0.0);
    CHECK(dg.a_plus() == 0.5);
    CHECK(dg.a_minus() == 0.5);
}

TEST_CASE("supercritical exactly above (l+1/2)^2")
{
    for (int l = 0; l <= 3; ++l) {
        double crit = (l + 0.5) * (l + 0.5);
        CHECK(classify_indicial(crit, l, false).cls == OriginClass::Degenerate);
        CHECK(classify_indicial(std::nextafter(crit, 1e9), l, false).cls == OriginClass::SuperCritical);
        CHECK(classify_indicial(crit - 1e-9, l, false).cls == OriginClass::TransitiveSingular);
    }
}

TEST_CASE("Vieta relations and admissibility recomputation")
{
    std::mt19937 rng(20261015);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int l = 0; l <= 3; ++l) {
        auto reg = classify_indicial(0, l, true);
        CHECK(reg.a_plus() * reg.a_minus() == doctest::Approx(-l * (l + 1.0)));
        CHECK(reg.a_plus() + reg.a_minus() == doctest::Approx(1.0));
        for (int k = 0; k < 200; ++k) {
            double g = dist(rng) * (l + 0.5) * (l + 0.5);
            auto d   = classify_indicial(g, l, false);
            REQUIRE(d.cls == OriginClass::TransitiveSingular);
            CHECK(d.a_plus() + d.a_minus() == doctest::Approx(1.0).epsilon(1e-14));
            CHECK((d.a_plus() - 0.5) * (d.a_plus() - 0.5) + g == doctest::Approx((l + 0.5) * (l + 0.5)).epsilon(1e-12));
            for (double a : {d.a_plus(), d.a_minus()}) {
                CHECK(contains(d.strict_admissible, a) == (a > 0));
                CHECK(contains(d.permissive_admissible, a) == (a > -0.5));
            }
            CHECK_NOTHROW(validate(d));
        }
    }
}

TEST_CASE("P decreases strictly with g")
{
    double prev = INFINITY;
    for (double g = -1; g < 0.25; g += 0.01) {
        auto d = classify_indicial(g, 0, false);
        CHECK(*d.P < prev);
        prev = *d.P;
    }
}

TEST_CASE("g = 0 reduces to the regular pair")
{
    for (int l = 0; l <= 4; ++l) {
        auto d = classify_indicial(1e-300, l, false);
        CHECK(d.a_plus() == doctest::Approx(l + 1.0));
        CHECK(d.a_minus() == doctest::Approx(-l).epsilon(1e-12));
    }
}

TEST_CASE("repulsive inverse square gives P above l + 1/2")
{
    auto d = classify_indicial(-0.5, 1, false);
    CHECK(*d.P > 1.5);
}

TEST_CASE("irregular branch flips at P = 1/2 (strict) and P = 1 (permissive)")
{
    // P = 1/2 at g = 0, P = 1 at g = -3/4 for l = 0
    auto below_half = classify_indicial(1e-6, 0, false);
    CHECK(below_half.admits(below_half.a_minus(), BoundaryMode::Strict));
    auto at_half = classify_indicial(0, 0, false);
    CHECK_FALSE(at_half.admits(at_half.a_minus(), BoundaryMode::Strict));
    CHECK(at_half.regime_boundary);

    auto below_one = classify_indicial(-0.75 + 1e-9, 0, false);
    CHECK(below_one.admits(below_one.a_minus(), BoundaryMode::Permissive));
    auto at_one = classify_indicial(-0.75, 0, false);
    CHECK_FALSE(at_one.admits(at_one.a_minus(), BoundaryMode::Permissive));
}

TEST_CASE("validate rejects inconsistent data")
{
    auto d = classify_indicial(0.15, 0, false);
    auto bad = d;
    bad.strict_admissible.push_back(-0.3);
    CHECK_THROWS_AS(validate(bad), DomainError);
    bad = d;
    bad.exponents = std::pair{0.9, 0.1};
    CHECK_THROWS_AS(validate(bad), DomainError);
    bad     = d;
    bad.cls = OriginClass::Regular;
    CHECK_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("problem invariants")
{
    Grid g(GridKind::Uniform, 0.1, 1, 16);
    CHECK_THROWS_AS(RadialProblem(1.0, -1, Coulomb{1}, g), DomainError);
    CHECK_THROWS_AS(RadialProblem(0.0, 0, Coulomb{1}, g), DomainError);
    CHECK_THROWS_AS(Grid(GridKind::Uniform, 0.0, 1, 16), DomainError);
    CHECK_THROWS_AS(Grid(GridKind::Uniform, 0.1, 1, 15), DomainError);
    CHECK_THROWS_AS(Grid(GridKind::LogSpaced, 2, 1, 100), DomainError);
}

TEST_CASE("log grid is geometric")
{
    Grid g(GridKind::LogSpaced, 1e-3, 10, 101);
    CHECK(g[0] == doctest::Approx(1e-3));
    CHECK(g[100] == doctest::Approx(10));
    CHECK(g[51] / g[50] == doctest::Approx(g[1] / g[0]).epsilon(1e-12));
}
