#include "radialbc/cli/run.hpp"

#include "radialbc/errors.hpp"
#include "radialbc/klein_gordon.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

namespace radialbc::cli {

using nlohmann::ordered_json;

namespace {

RadialProblem make_problem(RunConfig const& cfg, Grid const& grid)
{
    return RadialProblem(cfg.mass, cfg.l, make_potential(cfg.potential), grid);
}

void fail_report(Report& r, radialbc::error const& e)
{
    r.fields["status"]  = "error";
    r.fields["error"]   = e.name();
    r.fields["message"] = e.what();
}

int classify_single(RunConfig const& cfg, Report& r)
{
    auto grid    = resolve_grid(cfg);
    echo_inputs(r, cfg, &grid);
    auto problem = make_problem(cfg, grid);
    auto d       = classify_origin(problem);
    put_indicial(r, d);
    if (d.exponents) {
        r.fields["irregular_square_integrable"] = integrability_check(d.exponents->second).integrable;
    }
    if (d.cls == OriginClass::SuperCritical) {
        fail_report(r, FallToCenter("(l+1/2)^2 - g < 0: no real near-origin branch"));
        return exit_domain;
    }
    r.fields["status"] = "ok";
    return exit_ok;
}

/// Inverse-square sweep over g: the P(g) table across regimes.
int classify_sweep(RunConfig const& cfg, Report& r)
{
    echo_inputs(r, cfg, nullptr);
    std::vector<double> gs = cfg.sweep->values();
    ordered_json cls = ordered_json::array(), P = ordered_json::array(), ap = ordered_json::array(),
                 am = ordered_json::array(), strict = ordered_json::array(), perm = ordered_json::array();
    for (double g : gs) {
        auto d = classify_indicial(g, cfg.l, g == 0);
        cls.push_back(to_string(d.cls));
        P.push_back(d.P ? ordered_json(*d.P) : ordered_json(nullptr));
        ap.push_back(d.exponents ? ordered_json(d.exponents->first) : ordered_json(nullptr));
        am.push_back(d.exponents ? ordered_json(d.exponents->second) : ordered_json(nullptr));
        bool has_lower = d.exponents && d.cls != OriginClass::Degenerate;
        strict.push_back(has_lower && d.admits(d.exponents->second, BoundaryMode::Strict));
        perm.push_back(has_lower && d.admits(d.exponents->second, BoundaryMode::Permissive));
    }
    auto& f                       = r.fields;
    f["sweep_parameter"]          = cfg.sweep->parameter;
    f["sweep_g"]                  = gs;
    f["sweep_class"]              = cls;
    f["sweep_p"]                  = P;
    f["sweep_a_plus"]             = ap;
    f["sweep_a_minus"]            = am;
    f["sweep_irregular_strict"]   = strict;
    f["sweep_irregular_permissive"] = perm;
    r.columns = {"sweep_g", "sweep_class", "sweep_p", "sweep_a_plus", "sweep_a_minus", "sweep_irregular_strict",
                 "sweep_irregular_permissive"};
    f["status"] = "ok";
    return exit_ok;
}

std::pair<double, double> window_for(RunConfig const& cfg, RadialProblem const& problem)
{
    auto w = energy_window(cfg, problem);
    return {cfg.e_min.value_or(w.first), cfg.e_max.value_or(w.second)};
}

int solve_single(RunConfig const& cfg, Report& r)
{
    auto grid    = resolve_grid(cfg);
    echo_inputs(r, cfg, &grid);
    r.fields["requested_nodes"] = cfg.nodes;
    auto problem = make_problem(cfg, grid);
    auto window  = window_for(cfg, problem);
    r.fields["e_min"] = window.first;
    r.fields["e_max"] = window.second;
    auto d = classify_origin(problem);
    r.fields["class"] = to_string(d.cls);
    r.fields["p"]     = d.P ? ordered_json(*d.P) : ordered_json(nullptr);

    auto res = shoot_eigenvalue(problem, cfg.mode, cfg.branch, cfg.nodes, window);
    put_eigen(r, res, cfg.samples || cfg.output == OutputFormat::Csv);
    if (cfg.rescale) {
        auto diag                       = rescaling_diagnostic(problem, cfg.mode, cfg.branch, cfg.nodes, window, *cfg.rescale);
        r.fields["rescale"]             = diag.scale;
        r.fields["energy_scaled"]       = diag.E_scaled;
        r.fields["energy_ratio"]        = diag.ratio;
        r.fields["rescale_deviation"]   = diag.relative_deviation;
    }
    r.fields["status"] = "ok";
    return exit_ok;
}

/// Inverse-square sweep of the bound state with the configured node count.
int solve_sweep(RunConfig const& cfg, Report& r)
{
    auto grid = resolve_grid(cfg);
    echo_inputs(r, cfg, &grid);
    std::vector<double> gs = cfg.sweep->values();
    ordered_json cls = ordered_json::array(), P = ordered_json::array(), E = ordered_json::array(),
                 err = ordered_json::array();
    for (double g : gs) {
        RadialProblem problem(cfg.mass, cfg.l, InverseSquare{g}, grid);
        auto d = classify_origin(problem);
        cls.push_back(to_string(d.cls));
        P.push_back(d.P ? ordered_json(*d.P) : ordered_json(nullptr));
        try {
            E.push_back(shoot_eigenvalue(problem, cfg.mode, cfg.branch, cfg.nodes, window_for(cfg, problem)).E);
            err.push_back("");
        } catch (radialbc::error const& e) {
            E.push_back(nullptr);
            err.push_back(e.name());
        }
    }
    auto& f              = r.fields;
    f["requested_nodes"] = cfg.nodes;
    f["sweep_parameter"] = cfg.sweep->parameter;
    f["sweep_g"]         = gs;
    f["sweep_class"]     = cls;
    f["sweep_p"]         = P;
    f["sweep_energy"]    = E;
    f["sweep_error"]     = err;
    r.columns            = {"sweep_g", "sweep_class", "sweep_p", "sweep_energy", "sweep_error"};
    f["status"]          = "ok";
    return exit_ok;
}

void put_levels(Report& r, std::vector<EigenResult> const& levels)
{
    std::vector<double> E, defect;
    std::vector<int> nodes;
    for (auto const& s : levels) {
        E.push_back(s.E);
        nodes.push_back(s.nodes);
        defect.push_back(s.match_defect);
    }
    r.fields["level_nodes"]   = nodes;
    r.fields["energies"]      = E;
    r.fields["match_defects"] = defect;
    r.columns                 = {"level_nodes", "energies", "match_defects"};
}

int run_spectrum(RunConfig const& cfg, Report& r)
{
    auto grid    = resolve_grid(cfg);
    echo_inputs(r, cfg, &grid);
    r.fields["n_max"] = cfg.n_max;
    auto problem = make_problem(cfg, grid);
    auto window  = window_for(cfg, problem);
    r.fields["e_min"] = window.first;
    r.fields["e_max"] = window.second;
    put_levels(r, spectrum(problem, cfg.mode, cfg.branch, cfg.n_max, window));
    r.fields["status"] = "ok";
    return exit_ok;
}

int run_kg(RunConfig const& cfg, Report& r)
{
    auto grid = resolve_grid(cfg);
    echo_inputs(r, cfg, &grid);
    r.fields["n_max"] = cfg.n_max;
    KGProblem problem(cfg.mass, cfg.potential.alpha.value_or(0), cfg.l, grid);
    auto d = kg_classify(problem);
    put_indicial(r, d);
    r.fields["p_eff"] = problem.alpha == 0 ? ordered_json(cfg.l + 0.5) : r.fields["p"];
    put_levels(r, kg_spectrum(problem, cfg.mode, cfg.n_max));
    r.fields["status"] = "ok";
    return exit_ok;
}

int run_delta(RunConfig const& cfg, Report& r)
{
    echo_inputs(r, cfg, nullptr);
    r.fields["test_function"] = cfg.test_function;
    auto phi = gallery::by_name(cfg.test_function);
    put_identity(r, weak_delta_weight(phi, cfg.radius.value_or(10.0), 8, cfg.tolerance));
    r.fields["status"] = r.fields["converged"].get<bool>() ? "ok" : "error";
    if (!r.fields["converged"].get<bool>()) {
        r.fields["error"] = "ConvergenceError";
        return exit_domain;
    }
    return exit_ok;
}

int run_identity(RunConfig const& cfg, Report& r)
{
    double const a = cfg.radius.value_or(1.0);
    r.fields["test_function"] = cfg.test_function;
    if (cfg.test_function == "eigenstate") {
        auto grid    = resolve_grid(cfg);
        echo_inputs(r, cfg, &grid);
        r.fields["test_function"] = cfg.test_function;
        auto problem = make_problem(cfg, grid);
        auto state   = shoot_eigenvalue(problem, cfg.mode, cfg.branch, cfg.nodes, window_for(cfg, problem));
        r.fields["energy"] = state.E;
        r.fields["state_nodes"] = state.nodes;
        put_identity(r, operator_identity_residual(eigenfunction(problem, state), a, 8, cfg.tolerance));
    } else {
        // pointwise check on [1e-3, 10] unless a grid is given
        Grid grid(cfg.grid_kind, cfg.r_min.value_or(1e-3), cfg.r_max.value_or(10.0), cfg.points);
        echo_inputs(r, cfg, &grid);
        r.fields["test_function"] = cfg.test_function;
        auto u  = gallery::by_name(cfg.test_function);
        auto pw = pointwise_identity_check(u, grid);
        r.fields["pointwise_max_deviation"] = pw.max_abs_deviation;
        r.fields["pointwise_at_r"]          = pw.at_r;
        put_identity(r, operator_identity_residual(u, a, 8, cfg.tolerance));
    }
    bool ok            = r.fields["converged"].get<bool>();
    r.fields["status"] = ok ? "ok" : "error";
    if (!ok) {
        r.fields["error"] = "ConvergenceError";
        return exit_domain;
    }
    return exit_ok;
}

} // namespace

std::pair<double, double> energy_window(RunConfig const& cfg, RadialProblem const& problem)
{
    double const L = length_scale(cfg);
    double const m = problem.mass;
    double const ll = problem.l * (problem.l + 1.0);
    double lo = std::numeric_limits<double>::infinity(), top = -lo;
    for (double r : problem.grid.points()) {
        double v = evaluate_potential(problem.potential, r, m);
        lo       = std::min(lo, v + ll / (2 * m * r * r));
        top      = std::max(top, v);
    }
    lo              = std::max(lo, -1e4 / (m * L * L));
    double const th = asymptotic_value(problem.potential, m);
    double hi       = std::isfinite(th) ? th : top;
    lo              = std::min(lo, hi - 1 / (m * L * L));
    return {lo, hi};
}

std::pair<int, Report> execute(RunConfig const& cfg)
{
    Report r;
    int code = exit_ok;
    try {
        switch (cfg.command) {
            case Command::Classify:
                code = cfg.sweep ? classify_sweep(cfg, r) : classify_single(cfg, r);
                break;
            case Command::Solve:
                code = cfg.sweep ? solve_sweep(cfg, r) : solve_single(cfg, r);
                break;
            case Command::Spectrum:
                code = run_spectrum(cfg, r);
                break;
            case Command::KgSolve:
                code = run_kg(cfg, r);
                break;
            case Command::DeltaCheck:
                code = run_delta(cfg, r);
                break;
            case Command::IdentityCheck:
                code = run_identity(cfg, r);
                break;
        }
    } catch (QuadratureError const& e) {
        fail_report(r, e);
        std::vector<double> pts, vals;
        for (auto const& [p, v] : e.sequence()) {
            pts.push_back(p);
            vals.push_back(v);
        }
        r.fields["sequence_points"] = pts;
        r.fields["sequence_values"] = vals;
        code                        = exit_domain;
    } catch (radialbc::error const& e) {
        fail_report(r, e);
        code = exit_domain;
    }
    if (!r.fields.contains("command")) {
        echo_inputs(r, cfg, nullptr);
    }
    return {code, std::move(r)};
}

int main_entry(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    try {
        auto cfg = parse_config(args);
        if (!cfg) {
            return exit_ok;
        }
        if (cfg->output == OutputFormat::Csv && cfg->command == Command::Classify && !cfg->sweep) {
            throw UsageError("csv output needs a table (use --sweep, or json/table output)");
        }
        auto t0           = std::chrono::steady_clock::now();
        auto [code, rep]  = execute(*cfg);
        rep.fields["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        std::ofstream file;
        if (!cfg->out_path.empty()) {
            file.open(cfg->out_path);
            if (!file) {
                throw UsageError("cannot write " + cfg->out_path);
            }
        }
        std::ostream& sink = cfg->out_path.empty() ? out : file;
        switch (cfg->output) {
            case OutputFormat::Json:
                write_json(rep, sink);
                break;
            case OutputFormat::Csv:
                write_csv(rep, sink);
                break;
            case OutputFormat::Table:
                write_table(rep, sink);
                break;
        }
        if (code != exit_ok && rep.fields.contains("error")) {
            err << "radialbc: " << rep.fields["error"].get<std::string>();
            if (rep.fields.contains("message")) {
                err << ": " << rep.fields["message"].get<std::string>();
            }
            err << '\n';
        }
        return code;
    } catch (UsageError const& e) {
        err << "radialbc: usage: " << e.what() << '\n';
        return exit_usage;
    } catch (std::exception const& e) {
        err << "radialbc: " << e.what() << '\n';
        return exit_domain;
    }
}

} // namespace radialbc::cli
