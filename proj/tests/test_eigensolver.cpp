#include "radialbc/eigensolver.hpp"
#include "radialbc/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace radialbc;

namespace {

Grid coulomb_grid(double r_max = 200)
{
    return Grid(GridKind::LogSpaced, 1e-6, r_max, 4000);
}

Grid oscillator_grid()
{
    return Grid(GridKind::LogSpaced, 1e-6, 10, 4000);
}

auto const strict     = BoundaryMode::Strict;
auto const permissive = BoundaryMode::Permissive;
auto const principal  = BranchSelector::principal();

} // namespace

TEST_CASE("hydrogen ground and first excited state")
{
    RadialProblem p(1.0, 0, Coulomb{1}, coulomb_grid());
    auto e0 = shoot_eigenvalue(p, strict, principal, 0, {-1, -0.01});
    CHECK(std::abs(e0.E + 0.5) < 1e-8);
    CHECK(e0.nodes == 0);
    CHECK(e0.branch == 1.0);
    CHECK_NOTHROW(validate(e0));
    auto e1 = shoot_eigenvalue(p, strict, principal, 1, {-1, -0.01});
    CHECK(e1.E == doctest::Approx(-0.125).epsilon(1e-8));
    CHECK(e1.nodes == 1);
}

TEST_CASE("oscillator l=1 ground state")
{
    RadialProblem p(1.0, 1, HarmonicOscillator{1}, oscillator_grid());
    auto e = shoot_eigenvalue(p, strict, principal, 0, {0, 10});
    CHECK(e.E == doctest::Approx(2.5).epsilon(1e-8));
}

TEST_CASE("spectra")
{
    RadialProblem c(1.0, 0, Coulomb{1}, coulomb_grid(300));
    auto sc = spectrum(c, strict, principal, 2, {-1, -0.01});
    REQUIRE(sc.size() == 3);
    CHECK(sc[0].E == doctest::Approx(-0.5).epsilon(1e-8));
    CHECK(sc[1].E == doctest::Approx(-0.125).epsilon(1e-8));
    CHECK(sc[2].E == doctest::Approx(-1.0 / 18).epsilon(1e-8));

    RadialProblem h(1.0, 0, HarmonicOscillator{1}, oscillator_grid());
    auto sh = spectrum(h, strict, principal, 2, {0, 10});
    REQUIRE(sh.size() == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(sh[k].E == doctest::Approx(2 * k + 1.5).epsilon(1e-8));
        CHECK(sh[k].nodes == k);
    }
}

TEST_CASE("no bound states for a free particle")
{
    for (int l = 0; l <= 2; ++l) {
        RadialProblem p(1.0, l, FreeParticle{}, Grid(GridKind::LogSpaced, 1e-6, 30, 2000));
        CHECK(spectrum(p, strict, principal, 2, {-1, -1e-6}).empty());
    }
}

TEST_CASE("strict inverse square has no state in a fixed window")
{
    RadialProblem p(1.0, 0, InverseSquare{0.15}, Grid(GridKind::LogSpaced, 1e-6, 30, 4000));
    CHECK_THROWS_AS(shoot_eigenvalue(p, strict, principal, 0, {-10, -1e-3}), NoEigenvalueInWindow);
}

TEST_CASE("boundary mode gating")
{
    RadialProblem c(1.0, 0, Coulomb{1}, coulomb_grid());
    CHECK_THROWS_AS(shoot_eigenvalue(c, strict, BranchSelector::irregular(), 0, {-5, -0.01}), BoundaryModeViolation);
    auto e = shoot_eigenvalue(c, permissive, BranchSelector::irregular(), 0, {-5, -0.01});
    CHECK(e.branch == 0.0);
    CHECK(e.nodes == 0);

    // P = 0.6 >= 1/2: a_minus = -0.1 fails strict, passes permissive
    RadialProblem s(1.0, 0, InverseSquare{0.25 - 0.36}, Grid(GridKind::LogSpaced, 1e-6, 30, 4000));
    CHECK_THROWS_AS(shoot_eigenvalue(s, strict, BranchSelector::irregular(), 0, {-10, -1e-3}), BoundaryModeViolation);
    CHECK_THROWS_AS(shoot_eigenvalue(s, strict, BranchSelector::mix(-5), 0, {-10, -1e-3}), BoundaryModeViolation);
    try {
        shoot_eigenvalue(s, permissive, BranchSelector::mix(-5), 0, {-10, -1e-3});
    } catch (NoEigenvalueInWindow const&) {
        // integrated, just nothing in the window
    }

    RadialProblem sc(1.0, 0, InverseSquare{0.4}, Grid(GridKind::LogSpaced, 1e-6, 30, 4000));
    CHECK_THROWS_AS(shoot_eigenvalue(sc, permissive, principal, 0, {-10, -1e-3}), FallToCenter);

    RadialProblem dg(1.0, 0, InverseSquare{0.25}, Grid(GridKind::LogSpaced, 1e-6, 30, 4000));
    CHECK_THROWS_AS(shoot_eigenvalue(dg, permissive, BranchSelector::irregular(), 0, {-10, -1e-3}), Unsupported);
}

TEST_CASE("branch gating across random g")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 0.25);
    for (int k = 0; k < 40; ++k) {
        double g = dist(rng);
        RadialProblem p(1.0, 0, InverseSquare{g}, Grid(GridKind::LogSpaced, 1e-6, 30, 400));
        auto d = classify_origin(p);
        if (d.cls != OriginClass::TransitiveSingular) {
            continue;
        }
        bool strict_ok = d.admits(d.a_minus(), strict);
        CHECK(strict_ok == (*d.P < 0.5));
        CHECK(d.admits(d.a_minus(), permissive) == (*d.P < 1));
        if (strict_ok) {
            CHECK_NOTHROW(shooting::check_branch(d, strict, BranchSelector::irregular()));
        } else {
            CHECK_THROWS_AS(shooting::check_branch(d, strict, BranchSelector::irregular()), BoundaryModeViolation);
        }
    }
}

TEST_CASE("permissive inverse-square state scales with the grid")
{
    RadialProblem p(1.0, 0, InverseSquare{0.15}, Grid(GridKind::LogSpaced, 1e-6, 30, 4000));
    auto d = rescaling_diagnostic(p, permissive, BranchSelector::mix(-6500), 0, {-10, -1e-3}, 2.0);
    CHECK(d.relative_deviation < 1e-6);
    CHECK(d.E_scaled == doctest::Approx(d.E / 4).epsilon(1e-6));
}

TEST_CASE("permissive inverse-square state matches sqrt(r) K_P(kappa r)")
{
    // c_-/c_+ = Gamma(P) / Gamma(-P) (kappa/2)^{-2P}; with ratio -6500 at r_min = 1e-6, kappa ~ 1
    double const g = 0.15, P = std::sqrt(0.25 - g), r0 = 1e-6, ratio = -6500;
    double const c = ratio * std::pow(r0, 2 * P);
    double const kappa = 2 * std::pow(c * std::tgamma(-P) / std::tgamma(P), -1 / (2 * P));
    RadialProblem p(1.0, 0, InverseSquare{g}, Grid(GridKind::LogSpaced, r0, 30, 4000));
    auto e = shoot_eigenvalue(p, permissive, BranchSelector::mix(ratio), 0, {-10, -1e-3});
    CHECK(e.E == doctest::Approx(-kappa * kappa / 2).epsilon(1e-6));
}

TEST_CASE("eigenresults are normalised and ordered")
{
    RadialProblem p(1.0, 1, Coulomb{1}, coulomb_grid(400));
    auto s = spectrum(p, strict, principal, 2, {-1, -0.01});
    REQUIRE(s.size() == 3);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(std::abs(s[i].norm - 1) < 1e-8);
        CHECK(std::abs(s[i].match_defect) < 1e-8);
        CHECK(s[i].E == doctest::Approx(-1.0 / (2 * (i + 2.0) * (i + 2.0))).epsilon(1e-8));
        if (i > 0) {
            CHECK(s[i].E > s[i - 1].E);
        }
    }
}

TEST_CASE("eigenfunction matches the closed form and obeys the identity")
{
    RadialProblem p(1.0, 0, Coulomb{1}, coulomb_grid());
    auto e  = shoot_eigenvalue(p, strict, principal, 0, {-1, -0.01});
    auto tf = eigenfunction(p, e);
    double const c = 2.0; // normalised r exp(-r)
    for (double r : {1e-8, 1e-3, 0.5, 2.0, 6.0}) {
        CHECK(tf(r) == doctest::Approx(c * r * std::exp(-r)).epsilon(1e-6));
    }
    for (double a : {0.01, 0.1, 1.0, 2.0}) {
        CHECK(std::abs(operator_identity_residual(tf, a).value) < 1e-6);
    }
}

TEST_CASE("window expansion and empty windows")
{
    RadialProblem p(1.0, 0, Coulomb{1}, coulomb_grid());
    auto e = shoot_eigenvalue(p, strict, principal, 0, {-0.45, -0.4});
    CHECK(e.E == doctest::Approx(-0.5).epsilon(1e-8));
    CHECK_THROWS_AS(shoot_eigenvalue(p, strict, principal, 0, {0.1, 0.2}), NoEigenvalueInWindow);
    CHECK_THROWS_AS(shoot_eigenvalue(p, strict, principal, 0, {-0.1, -0.2}), DomainError);
}

TEST_CASE("integrability")
{
    CHECK(integrability_check(-0.25).integrable);
    CHECK(integrability_check(0.0).integrable);
    CHECK_FALSE(integrability_check(-1.0).integrable);
    CHECK_FALSE(integrability_check(-0.5).integrable);
    auto div = integrability_check(-1.0).partial_integrals;
    CHECK(div.back().second > 1e6);
    auto conv = integrability_check(-0.25).partial_integrals;
    CHECK(conv.back().second == doctest::Approx(2.0).epsilon(1e-3));
    for (double P = 0; P < 1; P += 0.05) {
        CHECK(integrability_check(0.5 - P).integrable);
    }
}

TEST_CASE("validate rejects broken results")
{
    EigenResult e;
    e.match_defect = 1e-6;
    CHECK_THROWS_AS(validate(e), DomainError);
    e.match_defect = 0;
    e.branch       = 0;
    CHECK_THROWS_AS(validate(e), DomainError);
    e.branch = 1;
    e.norm   = 1.1;
    CHECK_THROWS_AS(validate(e), DomainError);
}
