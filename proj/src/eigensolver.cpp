#include "radialbc/eigensolver.hpp"

#include "numerov.hpp"
#include "radialbc/errors.hpp"
#include "radialbc/quadrature.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <sstream>

namespace radialbc {

std::string to_string(BranchSelector const& b)
{
    switch (b.kind) {
        case BranchSelector::Kind::Principal:
            return "principal";
        case BranchSelector::Kind::Irregular:
            return "irregular";
        case BranchSelector::Kind::Mix: {
            std::ostringstream os;
            os.precision(17);
            os << "mix:" << b.ratio;
            return os.str();
        }
    }
    return "?";
}

namespace {

/// Origin terms for the seed, amplitudes relative to r_min.
std::vector<OriginTerm> origin_terms(IndicialData const& indicial, Grid const& grid, BranchSelector branch,
                                     RadialEquation const& eq)
{
    auto [ap, am]   = *indicial.exponents;
    double const r0 = grid.r_min();
    std::vector<OriginTerm> terms;
    if (branch.kind != BranchSelector::Kind::Irregular) {
        terms.push_back({series_start(eq.origin, ap, am), std::pow(r0, -ap)});
    }
    if (branch.uses_lower()) {
        double amp = branch.kind == BranchSelector::Kind::Mix ? branch.ratio : 1.0;
        terms.push_back({series_start(eq.origin, am, ap), amp * std::pow(r0, -am)});
    }
    return terms;
}

double seed_value(std::vector<OriginTerm> const& terms, double r)
{
    double v = 0;
    for (auto const& t : terms) {
        if (r > t.series.valid_radius) {
            throw DomainError("grid point r = " + std::to_string(r) + " lies beyond the origin series radius " +
                              std::to_string(t.series.valid_radius) + "; reduce r_min");
        }
        v += t.amplitude * t.series.value(r);
    }
    return v;
}

} // namespace

namespace shooting {

namespace {

std::string num(double x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

} // namespace

double check_branch(IndicialData const& indicial, BoundaryMode mode, BranchSelector branch)
{
    if (indicial.cls == OriginClass::SuperCritical || !indicial.exponents) {
        throw FallToCenter("g = " + num(indicial.g) + " exceeds (l+1/2)^2: no real near-origin branch");
    }
    auto [ap, am] = *indicial.exponents;
    if (!indicial.admits(ap, mode)) {
        throw BoundaryModeViolation("principal exponent " + num(ap) + " not admissible under " +
                                    to_string(mode) + " mode");
    }
    if (!branch.uses_lower()) {
        return ap;
    }
    if (indicial.cls == OriginClass::Degenerate) {
        throw Unsupported("degenerate indicial root: the logarithmic branch is not constructed");
    }
    if (!indicial.admits(am, mode)) {
        std::string why = mode == BoundaryMode::Strict ? "violates u(0) = 0" : "is not square integrable at the origin";
        throw BoundaryModeViolation("branch r^" + num(am) + " " + why + " (" + to_string(mode) + " mode)");
    }
    return am;
}

namespace {

struct Shot
{
    RadialEquation eq;
    numerov::Table table;
    std::vector<OriginTerm> terms;
};

Shot prepare(Family const& family, BranchSelector branch, double E)
{
    Shot s{family.at(E), {}, {}};
    s.table = numerov::tabulate(s.eq, family.grid);
    s.terms = origin_terms(family.indicial, family.grid, branch, s.eq);
    return s;
}

numerov::March march_out(Shot const& s, std::size_t stop)
{
    auto const& g = *s.table.grid;
    double y0     = numerov::from_u(s.table, 0, seed_value(s.terms, g[0]));
    double y1     = numerov::from_u(s.table, 1, seed_value(s.terms, g[1]));
    return numerov::outward(s.table, y0, y1, stop);
}

} // namespace

int count_nodes(Family const& family, BranchSelector branch, double E)
{
    auto s = prepare(family, branch, E);
    auto o = march_out(s, s.table.end);
    return numerov::sign_changes(o.y, 0, s.table.end);
}

double matching_function(Family const& family, BranchSelector branch, double E)
{
    auto s        = prepare(family, branch, E);
    std::size_t m = s.table.match;
    auto o        = march_out(s, m + 1);
    auto in       = numerov::inward(s.table, m - 1);
    double const a0 = o.y[m - 1], a1 = o.y[m];
    double const b0 = in.y[m - 1], b1 = in.y[m];
    double na = std::hypot(a0, a1), nb = std::hypot(b0, b1);
    if (na == 0 || nb == 0) {
        return 0;
    }
    return (a0 * b1 - a1 * b0) / (na * nb);
}

std::optional<std::pair<double, double>> bracket(Family const& family, BranchSelector branch, int nodes,
                                                 std::pair<double, double> window, int expansions)
{
    auto [lo, hi] = window;
    if (!(hi > lo)) {
        throw DomainError("energy window must satisfy E_lo < E_hi");
    }
    double const cap = std::isfinite(family.threshold)
                           ? family.threshold - 1e-12 * std::max(1.0, std::abs(family.threshold))
                           : std::numeric_limits<double>::infinity();
    hi           = std::min(hi, cap);
    double width = hi - lo;
    if (!(width > 0)) {
        return std::nullopt;
    }

    int n_lo = count_nodes(family, branch, lo);
    int n_hi = count_nodes(family, branch, hi);
    for (int k = 0; !(n_lo <= nodes && n_hi > nodes); ++k) {
        if (k == expansions) {
            return std::nullopt;
        }
        if (n_lo > nodes) {
            lo -= width;
            n_lo = count_nodes(family, branch, lo);
        }
        if (n_hi <= nodes) {
            if (hi >= cap) {
                return std::nullopt;
            }
            hi   = std::min(hi + width, cap);
            n_hi = count_nodes(family, branch, hi);
        }
        width *= 2;
    }

    while (n_lo != nodes || n_hi != nodes + 1) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-14 * std::max(1.0, std::abs(mid))) {
            break;
        }
        int n_mid = count_nodes(family, branch, mid);
        if (n_mid <= nodes) {
            lo   = mid;
            n_lo = n_mid;
        } else {
            hi   = mid;
            n_hi = n_mid;
        }
    }
    return std::pair{lo, hi};
}

EigenResult assemble(Family const& family, BoundaryMode mode, BranchSelector branch, double E)
{
    auto s        = prepare(family, branch, E);
    auto const& t = s.table;
    auto const& g = family.grid;
    std::size_t const m   = t.match;
    std::size_t const end = t.end;

    auto o  = march_out(s, m + 1);
    auto in = numerov::inward(t, m - 1);

    // scale inward onto outward over {m-1, m}
    double num = o.y[m - 1] * in.y[m - 1] + o.y[m] * in.y[m];
    double den = in.y[m - 1] * in.y[m - 1] + in.y[m] * in.y[m];
    double k   = num / den;

    EigenResult res;
    res.E               = E;
    res.mode            = mode;
    res.selector        = branch;
    res.branch          = branch.uses_lower() ? family.indicial.a_minus() : family.indicial.a_plus();
    res.matching_radius = g[m];
    res.r               = g.points();
    res.u_samples.assign(g.size(), 0.0);
    for (std::size_t i = 0; i <= end; ++i) {
        double y         = i <= m ? o.y[i] : k * in.y[i];
        res.u_samples[i] = numerov::to_u(t, i, y);
    }
    res.match_defect = (o.y[m - 1] / o.y[m] - in.y[m - 1] / in.y[m]) / t.h;

    // norm: trapezoid in the grid variable plus the series segment
    double norm = 0;
    for (std::size_t i = 0; i <= end; ++i) {
        double wgt = (i == 0 || i == end) ? 0.5 : 1.0;
        norm += wgt * res.u_samples[i] * res.u_samples[i] * g.jacobian(i);
    }
    norm *= t.h;

    double const outward_scale = std::exp(-o.log_scale);
    for (auto& term : s.terms) {
        term.amplitude *= outward_scale;
    }
    double a_min = std::numeric_limits<double>::infinity();
    for (auto const& term : s.terms) {
        a_min = std::min(a_min, term.series.exponent);
    }
    double const r0 = g.r_min();
    double const kk = 1.0 / (2 * a_min + 1);
    auto seg        = quadrature::adaptive(
        [&](double x) {
            if (x <= 0) {
                return 0.0;
            }
            double r = r0 * std::pow(x, kk);
            double v = 0;
            for (auto const& term : s.terms) {
                v += term.amplitude * term.series.value(r);
            }
            return v * v * r0 * kk * std::pow(x, kk - 1);
        },
        0.0, 1.0, 1e-300, 1e-12);
    norm += seg.value;

    double sign = 1;
    for (double u : res.u_samples) {
        if (u != 0) {
            sign = u > 0 ? 1 : -1;
            break;
        }
    }
    double const scale = sign / std::sqrt(norm);
    for (auto& u : res.u_samples) {
        u *= scale;
    }
    for (auto& term : s.terms) {
        term.amplitude *= scale;
    }
    res.origin = std::move(s.terms);
    res.nodes  = numerov::sign_changes(res.u_samples, 0, end);
    res.norm   = norm * scale * scale;
    return res;
}

EigenResult solve(Family const& family, BoundaryMode mode, BranchSelector branch, int nodes,
                  std::pair<double, double> window)
{
    if (nodes < 0) {
        throw DomainError("node count must be non-negative");
    }
    check_branch(family.indicial, mode, branch);
    auto br = bracket(family, branch, nodes, window);
    if (!br) {
        std::ostringstream os;
        os << "no state with " << nodes << " nodes in E window [" << window.first << ", " << window.second
           << "] or its expansions";
        throw NoEigenvalueInWindow(os.str());
    }
    auto [lo, hi] = *br;

    int evaluations = 0;
    auto f          = [&](double E) {
        ++evaluations;
        return matching_function(family, branch, E);
    };
    double f_lo = f(lo), f_hi = f(hi);
    if (f_lo == 0) {
        hi = lo;
    } else if (f_hi == 0) {
        lo = hi;
    } else {
        if ((f_lo > 0) == (f_hi > 0)) {
            throw ConvergenceError("matching function does not change sign across the node bracket");
        }
        std::uintmax_t max_iter = 200;
        auto tol                = [](double a, double b) { return std::abs(b - a) <= 1e-13 * std::max(1.0, std::abs(a)); };
        auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tol, max_iter);
        lo = a;
        hi = b;
    }
    double E = 0.5 * (lo + hi);
    if (std::abs(hi - lo) > 1e-10 * std::max(1.0, std::abs(E))) {
        throw ConvergenceError("energy did not converge");
    }

    auto res       = assemble(family, mode, branch, E);
    res.iterations = evaluations;
    if (std::abs(res.match_defect) > 1e-8) {
        throw ConvergenceError("log-derivative mismatch " + std::to_string(res.match_defect) + " above 1e-8");
    }
    if (res.nodes != nodes) {
        throw ConvergenceError("matched state has " + std::to_string(res.nodes) + " nodes, expected " +
                               std::to_string(nodes));
    }
    return res;
}

} // namespace shooting

namespace {

shooting::Family schroedinger_family(RadialProblem const& problem)
{
    shooting::Family fam{[problem](double E) { return schroedinger_equation(problem, E); }, classify_origin(problem),
                         problem.grid, asymptotic_value(problem.potential, problem.mass)};
    return fam;
}

} // namespace

RadialSolution integrate_radial(RadialProblem const& problem, double E, Direction direction, BranchSelector branch)
{
    auto fam      = schroedinger_family(problem);
    auto eq       = fam.at(E);
    auto table    = numerov::tabulate(eq, problem.grid);
    auto const& g = problem.grid;

    RadialSolution sol;
    numerov::March march;
    if (direction == Direction::Outward) {
        if (fam.indicial.cls == OriginClass::SuperCritical) {
            throw FallToCenter("no real near-origin branch");
        }
        if (branch.uses_lower() && fam.indicial.cls == OriginClass::Degenerate) {
            throw Unsupported("degenerate indicial root: the logarithmic branch is not constructed");
        }
        auto terms = origin_terms(fam.indicial, g, branch, eq);
        auto value = [&](double r) { return seed_value(terms, r); };
        march     = numerov::outward(table, numerov::from_u(table, 0, value(g[0])),
                                     numerov::from_u(table, 1, value(g[1])), table.end);
        sol.first = 0;
        sol.last  = table.end;
    } else {
        march     = numerov::inward(table, 0);
        sol.first = 0;
        sol.last  = table.end;
    }
    sol.log_scale = march.log_scale;
    sol.r         = g.points();
    sol.u.assign(g.size(), 0.0);
    for (std::size_t i = sol.first; i <= sol.last; ++i) {
        sol.u[i] = numerov::to_u(table, i, march.y[i]);
    }
    auto tf = sampled_test_function("u", g, sol.u);
    sol.du.assign(g.size(), 0.0);
    for (std::size_t i = sol.first; i <= sol.last; ++i) {
        sol.du[i] = tf.d1(g[i]);
    }
    return sol;
}

EigenResult shoot_eigenvalue(RadialProblem const& problem, BoundaryMode mode, BranchSelector branch, int nodes,
                             std::pair<double, double> E_window)
{
    return shooting::solve(schroedinger_family(problem), mode, branch, nodes, E_window);
}

std::vector<EigenResult> spectrum(RadialProblem const& problem, BoundaryMode mode, BranchSelector branch, int n_max,
                                  std::pair<double, double> E_window)
{
    auto fam = schroedinger_family(problem);
    shooting::check_branch(fam.indicial, mode, branch);
    std::vector<EigenResult> out;
    for (int n = 0; n <= n_max; ++n) {
        try {
            out.push_back(shooting::solve(fam, mode, branch, n, E_window));
        } catch (NoEigenvalueInWindow const&) {
            break;
        }
        if (out.size() > 1 && !(out.back().E > out[out.size() - 2].E)) {
            throw ConvergenceError("spectrum not increasing with node count");
        }
    }
    return out;
}

TestFunction eigenfunction(RadialProblem const& problem, EigenResult const& state)
{
    return eigenfunction(schroedinger_equation(problem, state.E), problem.grid, state);
}

TestFunction eigenfunction(RadialEquation const& eq, Grid const& grid, EigenResult const& state)
{
    auto terms = std::make_shared<std::vector<OriginTerm> const>(state.origin);
    TestFunction origin;
    origin.label = "origin-series";
    origin.f     = [terms](double r) {
        double v = 0;
        for (auto const& t : *terms) {
            v += t.amplitude * t.series.value(r);
        }
        return v;
    };
    origin.d1 = [terms](double r) {
        double v = 0;
        for (auto const& t : *terms) {
            v += t.amplitude * t.series.derivative(r);
        }
        return v;
    };
    origin.d2 = [terms](double r) {
        double v = 0;
        for (auto const& t : *terms) {
            v += t.amplitude * t.series.second_derivative(r);
        }
        return v;
    };

    auto tf   = sampled_test_function("eigenstate", grid, state.u_samples, origin);
    double r0 = grid.r_min();
    auto f    = tf.f;
    tf.d2     = [f, origin, w = eq.w, r0](double r) { return r < r0 ? origin.d2(r) : w(r) * f(r); };
    return tf;
}

void validate(EigenResult const& e, double match_tolerance)
{
    auto fail = [](std::string const& m) { throw DomainError("EigenResult invariant: " + m); };
    if (!std::isfinite(e.E)) {
        fail("energy not finite");
    }
    if (e.nodes < 0) {
        fail("negative node count");
    }
    if (!(std::abs(e.match_defect) < match_tolerance)) {
        fail("match_defect above tolerance");
    }
    if (std::abs(e.norm - 1) > 1e-8) {
        fail("normalisation off by more than 1e-8");
    }
    if (e.r.size() != e.u_samples.size()) {
        fail("sample count mismatch");
    }
    if (e.mode == BoundaryMode::Strict && !(e.branch > strict_threshold)) {
        fail("Strict result seeded with an exponent <= 0");
    }
    if (!(e.branch > permissive_threshold)) {
        fail("seed exponent not square integrable");
    }
}

IntegrabilityReport integrability_check(double exponent, double epsilon)
{
    IntegrabilityReport rep;
    rep.integrable = exponent > permissive_threshold;
    double const p = 2 * exponent + 1;
    for (int k = 1; k <= 8; ++k) {
        double delta = epsilon * std::pow(10.0, -k);
        double v     = p == 0 ? std::log(epsilon / delta) : (std::pow(epsilon, p) - std::pow(delta, p)) / p;
        rep.partial_integrals.emplace_back(delta, v);
    }
    return rep;
}

RescalingDiagnostic rescaling_diagnostic(RadialProblem const& problem, BoundaryMode mode, BranchSelector branch,
                                         int nodes, std::pair<double, double> E_window, double scale)
{
    RescalingDiagnostic d;
    d.scale = scale;
    d.E     = shoot_eigenvalue(problem, mode, branch, nodes, E_window).E;
    RadialProblem scaled(problem.mass, problem.l, problem.potential, problem.grid.scaled(scale));
    double s2  = scale * scale;
    d.E_scaled = shoot_eigenvalue(scaled, mode, branch, nodes, {E_window.first / s2, E_window.second / s2}).E;
    d.ratio    = d.E / d.E_scaled;
    d.relative_deviation = std::abs(d.ratio / s2 - 1);
    return d;
}

} // namespace radialbc
