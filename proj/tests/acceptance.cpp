// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "radialbc/cli/run.hpp"
#include "radialbc/distributional.hpp"
#include "radialbc/eigensolver.hpp"
#include "radialbc/errors.hpp"
#include "radialbc/fd_oracle.hpp"
#include "radialbc/klein_gordon.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace radialbc;

namespace {

constexpr double four_pi = 4 * std::numbers::pi;

struct Failure
{
    std::string what;
};

void require(bool ok, std::string const& what)
{
    if (!ok) {
        throw Failure{what};
    }
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
auto timed(F&& f, double& secs)
{
    auto t0 = std::chrono::steady_clock::now();
    auto r  = f();
    secs    = seconds_since(t0);
    return r;
}

// Strict eigenfunctions collected by criteria 4 and 9, checked in 10.
std::vector<TestFunction> strict_states;

std::string delta_weight()
{
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream out, err;
    int code = cli::main_entry({"radialbc", "delta-check", "--test-function", "gaussian", "--output", "json"}, out, err);
    double secs = seconds_since(t0);
    require(code == 0, "delta-check exit status " + std::to_string(code));
    auto j       = nlohmann::json::parse(out.str());
    double value = j.at("value").get<double>();
    double order = j.at("observed_order").get<double>();
    require(std::abs(value + four_pi) < 1e-6, "weight " + fmt(value));
    require(order >= 4, "observed order " + fmt(order));
    require(secs < 1, "runtime " + fmt(secs) + " s");
    return "|W + 4pi| = " + fmt(std::abs(value + four_pi)) + ", order " + fmt(order) + ", " + fmt(secs) + " s";
}

std::string operator_identity()
{
    auto t0      = std::chrono::steady_clock::now();
    double worst = 0, worst_zero = 0;
    for (double a : {0.01, 0.1, 1.0, 2.0}) {
        auto e = operator_identity_residual(gallery::exp_decay(), a);
        require(std::abs(e.value + four_pi) < 1e-6, "exp(-r), a = " + fmt(a) + ": D = " + fmt(e.value));
        worst  = std::max(worst, std::abs(e.value + four_pi));
        auto z = operator_identity_residual(gallery::r_exp(), a);
        require(std::abs(z.value) < 1e-8, "r exp(-r), a = " + fmt(a) + ": D = " + fmt(z.value));
        worst_zero = std::max(worst_zero, std::abs(z.value));
    }
    double secs = seconds_since(t0);
    require(secs < 1, "runtime " + fmt(secs) + " s");
    return "max |D + 4pi| = " + fmt(worst) + ", max |D| (u(0)=0) = " + fmt(worst_zero) + ", " + fmt(secs) + " s";
}

std::string pointwise_identity()
{
    std::vector<Grid> grids = {Grid(GridKind::LogSpaced, 1e-3, 10, 2000), Grid(GridKind::Uniform, 1e-3, 10, 2000),
                               Grid(GridKind::LogSpaced, 1e-3, 1, 500)};
    double worst = 0;
    for (auto const& name : gallery::names()) {
        for (auto const& g : grids) {
            auto rep = pointwise_identity_check(gallery::by_name(name), g);
            require(rep.max_abs_deviation < 1e-9, name + ": deviation " + fmt(rep.max_abs_deviation) + " at r = " +
                                                      fmt(rep.at_r));
            worst = std::max(worst, rep.max_abs_deviation);
        }
    }
    return "max deviation " + fmt(worst) + " over " + std::to_string(gallery::names().size()) + " functions";
}

/// Shooting, FD at h and h/2 and the Richardson value for one state.
double check_state(RadialProblem const& shoot_problem, Potential const& pot, int l, int nodes, double exact,
                   double fd_r_max, double& slowest)
{
    double secs = 0;
    auto state  = timed(
        [&] {
            return shoot_eigenvalue(shoot_problem, BoundaryMode::Strict, BranchSelector::principal(), nodes,
                                     {exact - 0.1 * std::abs(exact), exact + 0.1 * std::abs(exact)});
        },
        secs);
    slowest    = std::max(slowest, secs);
    double rel = std::abs(state.E / exact - 1);
    require(rel < 1e-6, "E = " + fmt(state.E) + " vs " + fmt(exact));
    require(secs < 1, "solve took " + fmt(secs) + " s");
    strict_states.push_back(eigenfunction(shoot_problem, state));

    std::size_t n = 6000;
    RadialProblem coarse(1.0, l, pot, Grid(GridKind::Uniform, fd_r_max / (n + 1), fd_r_max, n));
    RadialProblem fine(1.0, l, pot, Grid(GridKind::Uniform, fd_r_max / (2 * n + 2), fd_r_max, 2 * n + 1));
    auto a = fd_oracle_spectrum(coarse, BoundaryMode::Strict, nodes + 1);
    auto b = fd_oracle_spectrum(fine, BoundaryMode::Strict, nodes + 1);
    double h = a.step;
    double Ea = a.energies[nodes], Eb = b.energies[nodes];
    double budget = 10 * h * h * std::max(1.0, std::abs(exact));
    require(std::abs(Ea - state.E) < budget, "FD " + fmt(Ea) + " outside 10 h^2 of " + fmt(state.E));
    double rich = richardson_h2(Ea, Eb);
    require(std::abs(rich - state.E) < 1e-5 * std::abs(exact), "Richardson " + fmt(rich) + " vs " + fmt(state.E));
    return rel;
}

std::string regular_spectra()
{
    double worst = 0, slowest = 0;
    for (int l = 0; l <= 1; ++l) {
        for (int n = l + 1; n <= 4; ++n) {
            RadialProblem p(1.0, l, Coulomb{1}, Grid(GridKind::LogSpaced, 1e-6, 30.0 * n * n, 4000));
            worst = std::max(worst, check_state(p, Coulomb{1}, l, n - l - 1, -0.5 / (n * n), 40.0 * n, slowest));
        }
    }
    // lowest six oscillator states: (k, l) = (0,0) (0,1) (1,0) (0,2) (1,1) (0,3)
    int const kl[6][2] = {{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {0, 3}};
    for (auto const& [k, l] : kl) {
        RadialProblem p(1.0, l, HarmonicOscillator{1}, Grid(GridKind::LogSpaced, 1e-6, 10, 4000));
        worst = std::max(worst, check_state(p, HarmonicOscillator{1}, l, k, 2 * k + l + 1.5, 10.0, slowest));
    }
    return "max relative error " + fmt(worst) + ", slowest solve " + fmt(slowest) + " s, FD + Richardson agree";
}

std::string indicial_regimes()
{
    double worst = 0;
    int const n  = 3001;
    for (int i = 0; i < n; ++i) {
        double g = -1 + 1.5 * i / (n - 1);
        auto d   = classify_indicial(g, 0, false);
        if (g > 0.25) {
            require(d.cls == OriginClass::SuperCritical, "g = " + fmt(g) + " not supercritical");
            continue;
        }
        double P = std::sqrt(0.25 - g);
        require(d.P.has_value(), "no P at g = " + fmt(g));
        worst = std::max(worst, std::abs(*d.P - P));
        bool irregular = d.cls == OriginClass::TransitiveSingular;
        require(!irregular || d.admits(d.a_minus(), BoundaryMode::Strict) == (P < 0.5), "strict flip at g = " + fmt(g));
        require(!irregular || d.admits(d.a_minus(), BoundaryMode::Permissive) == (P < 1),
                "permissive flip at g = " + fmt(g));
    }
    require(worst <= std::numeric_limits<double>::epsilon(), "P differs by " + fmt(worst));

    auto strict_lower = [](double g) {
        auto d = classify_indicial(g, 0, false);
        return d.admits(d.a_minus(), BoundaryMode::Strict);
    };
    auto permissive_lower = [](double g) {
        auto d = classify_indicial(g, 0, false);
        return d.admits(d.a_minus(), BoundaryMode::Permissive);
    };
    require(strict_lower(1e-12) && !strict_lower(0.0), "strict flip not at P = 1/2");
    require(permissive_lower(-0.75 + 1e-12) && !permissive_lower(-0.75), "permissive flip not at P = 1");
    for (int l = 0; l <= 3; ++l) {
        double crit = (l + 0.5) * (l + 0.5);
        require(classify_indicial(crit, l, false).cls == OriginClass::Degenerate, "critical g not degenerate");
        require(classify_indicial(std::nextafter(crit, 1e9), l, false).cls == OriginClass::SuperCritical,
                "supercritical not flagged just above (l+1/2)^2, l = " + std::to_string(l));
    }
    return "max |P - closed form| = " + fmt(worst) + " over " + std::to_string(n) + " g values";
}

std::string integrability_table()
{
    for (int i = 0; i < 100; ++i) {
        double P = i / 100.0;
        require(integrability_check(0.5 - P).integrable, "irregular branch at P = " + fmt(P));
    }
    require(!integrability_check(0.5 - 1.0).integrable, "P = 1 should not be integrable");
    RadialProblem c(1.0, 0, Coulomb{1}, Grid(GridKind::LogSpaced, 1e-6, 30, 400));
    double a = classify_origin(c).a_minus();
    require(a == 0 && integrability_check(a).integrable, "l = 0 irregular branch of a regular potential");
    RadialProblem c1(1.0, 1, Coulomb{1}, Grid(GridKind::LogSpaced, 1e-6, 30, 400));
    require(!integrability_check(classify_origin(c1).a_minus()).integrable, "l = 1 irregular branch integrable");
    return "irregular branch integrable for 0 <= P < 1 and for l = 0 regular potentials";
}

std::string mode_gating()
{
    auto attempt = [](RadialProblem const& p, BoundaryMode mode, BranchSelector b) -> std::string {
        try {
            shoot_eigenvalue(p, mode, b, 0, {-10, -1e-3});
            return "solved";
        } catch (BoundaryModeViolation const&) {
            return "BoundaryModeViolation";
        } catch (NoEigenvalueInWindow const&) {
            return "integrated";
        }
    };
    RadialProblem coulomb(1.0, 0, Coulomb{1}, Grid(GridKind::LogSpaced, 1e-6, 60, 4000));
    require(attempt(coulomb, BoundaryMode::Strict, BranchSelector::irregular()) == "BoundaryModeViolation",
            "Coulomb a = 0 accepted under Strict");
    require(attempt(coulomb, BoundaryMode::Permissive, BranchSelector::irregular()) != "BoundaryModeViolation",
            "Coulomb a = 0 rejected under Permissive");
    int cases = 1;
    for (double P : {0.5, 0.6, 0.75, 0.9}) {
        RadialProblem p(1.0, 0, InverseSquare{0.25 - P * P}, Grid(GridKind::LogSpaced, 1e-6, 30, 4000));
        for (auto b : {BranchSelector::irregular(), BranchSelector::mix(-5.0)}) {
            require(attempt(p, BoundaryMode::Strict, b) == "BoundaryModeViolation",
                    "P = " + fmt(P) + " lower branch accepted under Strict");
            require(attempt(p, BoundaryMode::Permissive, b) != "BoundaryModeViolation",
                    "P = " + fmt(P) + " lower branch rejected under Permissive");
            auto sol = integrate_radial(p, -1.0, Direction::Outward, b);
            require(std::isfinite(sol.u[sol.last]), "Permissive integration failed");
            ++cases;
        }
    }
    return std::to_string(cases) + " requests gated under Strict and integrated under Permissive";
}

std::string inverse_square()
{
    RadialProblem p(1.0, 0, InverseSquare{0.15}, Grid(GridKind::LogSpaced, 1e-6, 30, 4000));
    auto strict = spectrum(p, BoundaryMode::Strict, BranchSelector::principal(), 3, {-10, -1e-3});
    require(strict.empty(), "Strict search found " + std::to_string(strict.size()) + " states");
    double worst = 0;
    int matched  = 0;
    for (double ratio : {-3000.0, -6500.0, -20000.0}) {
        for (double s : {2.0, 0.5}) {
            auto d = rescaling_diagnostic(p, BoundaryMode::Permissive, BranchSelector::mix(ratio), 0, {-10, -1e-3}, s);
            require(d.relative_deviation < 0.01, "ratio " + fmt(ratio) + ", scale " + fmt(s) + ": E ratio " +
                                                     fmt(d.ratio));
            worst = std::max(worst, d.relative_deviation);
            ++matched;
        }
    }
    return "Strict window empty; " + std::to_string(matched) + " Permissive states scale as s^2 within " + fmt(worst);
}

std::string klein_gordon()
{
    KGProblem p(1.0, 0.3, 0, Grid(GridKind::LogSpaced, 1e-6, 400, 4000));
    auto eff = kg_effective(p, 0.9);
    require(eff.P_eff && *eff.P_eff == 0.4, "P_eff = " + fmt(eff.P_eff.value_or(-1)));
    double worst = 0;
    auto levels  = kg_spectrum(p, BoundaryMode::Strict, 1);
    require(levels.size() == 2, "found " + std::to_string(levels.size()) + " levels");
    for (int n = 0; n < 2; ++n) {
        double N     = n + 0.5 + 0.4;
        double exact = 1 / std::sqrt(1 + 0.09 / (N * N));
        require(std::abs(levels[n].E - exact) < 1e-6, "level " + std::to_string(n) + ": " + fmt(levels[n].E));
        worst = std::max(worst, std::abs(levels[n].E - exact));
        strict_states.push_back(kg_eigenfunction(p, levels[n]));
    }
    KGProblem sc(1.0, 0.6, 0, Grid(GridKind::LogSpaced, 1e-6, 400, 4000));
    require(kg_classify(sc).cls == OriginClass::SuperCritical, "alpha = 0.6 not supercritical");
    return "levels within " + fmt(worst) + " of the closed form, P_eff = 0.4, alpha = 0.6 SuperCritical";
}

std::string compatibility()
{
    require(!strict_states.empty(), "no eigenfunctions collected");
    double worst = 0;
    for (auto const& u : strict_states) {
        for (double a : {0.5, 1.0, 2.0}) {
            auto rep = operator_identity_residual(u, a);
            require(std::abs(rep.value) < 1e-6, "|D| = " + fmt(rep.value) + " at a = " + fmt(a));
            worst = std::max(worst, std::abs(rep.value));
        }
    }
    return std::to_string(strict_states.size()) + " eigenfunctions, max |D| = " + fmt(worst);
}

} // namespace

int main()
{
    struct Criterion
    {
        char const* title;
        std::function<std::string()> check;
    };
    std::vector<Criterion> criteria = {
        {"delta weight of the Gaussian", delta_weight},
        {"operator identity", operator_identity},
        {"pointwise identity", pointwise_identity},
        {"regular-potential spectra", regular_spectra},
        {"indicial regimes", indicial_regimes},
        {"square integrability", integrability_table},
        {"boundary-mode gating", mode_gating},
        {"inverse-square emptiness and scaling", inverse_square},
        {"Klein-Gordon levels", klein_gordon},
        {"compatibility of Strict eigenfunctions", compatibility},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string verdict, detail;
        try {
            detail  = criteria[i].check();
            verdict = "PASS";
        } catch (Failure const& f) {
            verdict = "FAIL";
            detail  = f.what;
        } catch (radialbc::error const& e) {
            verdict = "FAIL";
            detail  = std::string(e.name()) + ": " + e.what();
        }
        failed += verdict == "FAIL";
        std::printf("%s %2zu %-40s %s\n", verdict.c_str(), i + 1, criteria[i].title, detail.c_str());
    }
    std::fflush(stdout);
    return failed ? 1 : 0;
}
