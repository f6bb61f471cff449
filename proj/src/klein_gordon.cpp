#include "radialbc/klein_gordon.hpp"

#include "radialbc/errors.hpp"

#include <cmath>
#include <string>

namespace radialbc {

KGProblem::KGProblem(double mass_, double alpha_, int l_, Grid grid_)
    : mass(mass_), alpha(alpha_), l(l_), grid(std::move(grid_))
{
    if (!(mass > 0) || !std::isfinite(mass)) {
        throw DomainError("mass must be positive");
    }
    if (!(alpha >= 0) || !std::isfinite(alpha)) {
        throw DomainError("alpha must be finite and non-negative");
    }
    if (l < 0) {
        throw DomainError("l must be non-negative");
    }
}

IndicialData kg_classify(KGProblem const& problem)
{
    return classify_indicial(problem.alpha * problem.alpha, problem.l, problem.alpha == 0);
}

namespace {

RadialEquation kg_equation(KGProblem const& p, double E)
{
    double const m = p.mass, a = p.alpha;
    double const k2 = m * m - E * E;
    double const c1 = -2 * E * a;
    double const c0 = p.l * (p.l + 1.0) - a * a;
    RadialEquation eq;
    eq.w      = [k2, c1, c0](double r) { return k2 + c1 / r + c0 / (r * r); };
    eq.origin = {{c0, c1, k2, 0.0, 0.0}};
    return eq;
}

shooting::Family kg_family(KGProblem const& p)
{
    return {[p](double E) { return kg_equation(p, E); }, kg_classify(p), p.grid, p.mass};
}

int principal_quantum_number(KGProblem const& p, int nodes)
{
    return nodes + p.l + 1;
}

/// Secant on the matching function; nullopt when it wanders off or stalls.
std::optional<double> secant(shooting::Family const& fam, double m, double E0, double E1, int& evaluations)
{
    auto f = [&](double E) {
        ++evaluations;
        return shooting::matching_function(fam, BranchSelector::principal(), E);
    };
    double f0 = f(E0), f1 = f(E1);
    for (int it = 0; it < 60; ++it) {
        if (f1 == 0) {
            return E1;
        }
        if (f1 == f0) {
            return std::nullopt;
        }
        double E2 = E1 - f1 * (E1 - E0) / (f1 - f0);
        if (!(E2 > 0 && E2 < m)) {
            return std::nullopt;
        }
        if (std::abs(E2 - E1) < 1e-14 * m) {
            return E2;
        }
        E0 = E1;
        f0 = f1;
        E1 = E2;
        f1 = f(E1);
    }
    return std::nullopt;
}

} // namespace

KGEffective kg_effective(KGProblem const& problem, double E)
{
    if (!(std::abs(E) < problem.mass)) {
        throw DomainError("bound states need |E| < m");
    }
    KGEffective out{kg_equation(problem, E), kg_classify(problem), std::nullopt};
    out.P_eff = out.indicial.P;
    if (problem.alpha == 0) {
        out.P_eff = problem.l + 0.5;
    }
    return out;
}

EigenResult kg_solve(KGProblem const& problem, BoundaryMode mode, int nodes)
{
    if (nodes < 0) {
        throw DomainError("node count must be non-negative");
    }
    auto fam          = kg_family(problem);
    auto const branch = BranchSelector::principal();
    shooting::check_branch(fam.indicial, mode, branch);

    double const m  = problem.mass;
    double const a  = problem.alpha;
    double const n  = principal_quantum_number(problem, nodes);
    double const E0 = m * (1 - a * a / (2 * n * n));
    int evaluations = 0;

    if (E0 > 0 && E0 < m) {
        try {
            double E1 = m - 0.99 * (m - E0);
            if (auto E = secant(fam, m, E0, E1, evaluations)) {
                auto res = shooting::assemble(fam, mode, branch, *E);
                if (res.nodes == nodes && std::abs(res.match_defect) <= 1e-8) {
                    res.iterations = evaluations;
                    return res;
                }
            }
        } catch (AsymptoticsError const&) {
            // secant stepped too close to threshold; fall through to the bracket
        }
    }

    try {
        auto res = shooting::solve(fam, mode, branch, nodes, {1e-9 * m, m});
        res.iterations += evaluations;
        return res;
    } catch (NoEigenvalueInWindow const&) {
        throw;
    } catch (ConvergenceError const& e) {
        throw KGIterationError("outer iteration for " + std::to_string(nodes) + " nodes did not converge: " +
                               e.what());
    }
}

std::vector<EigenResult> kg_spectrum(KGProblem const& problem, BoundaryMode mode, int n_max)
{
    shooting::check_branch(kg_classify(problem), mode, BranchSelector::principal());
    std::vector<EigenResult> out;
    if (problem.alpha == 0) {
        return out;
    }
    for (int n = 0; n <= n_max; ++n) {
        try {
            out.push_back(kg_solve(problem, mode, n));
        } catch (NoEigenvalueInWindow const&) {
            break;
        }
        if (out.size() > 1 && !(out.back().E > out[out.size() - 2].E)) {
            throw KGIterationError("levels not increasing with node count");
        }
    }
    return out;
}

TestFunction kg_eigenfunction(KGProblem const& problem, EigenResult const& state)
{
    return eigenfunction(kg_equation(problem, state.E), problem.grid, state);
}

} // namespace radialbc
