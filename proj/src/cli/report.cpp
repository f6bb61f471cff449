#include "radialbc/cli/report.hpp"

#include "radialbc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

namespace radialbc::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json number_or_null(std::optional<double> v)
{
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string cell(ordered_json const& v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_null()) {
        return "";
    }
    return v.dump();
}

} // namespace

char const* version()
{
    return RADIALBC_VERSION;
}

void echo_inputs(Report& r, RunConfig const& cfg, Grid const* grid)
{
    auto& f        = r.fields;
    f["command"]   = to_string(cfg.command);
    f["potential"] = cfg.potential.kind.empty() ? ordered_json(nullptr) : ordered_json(cfg.potential.kind);
    if (cfg.potential.alpha) {
        f["alpha"] = *cfg.potential.alpha;
    }
    if (cfg.potential.omega) {
        f["omega"] = *cfg.potential.omega;
    }
    if (cfg.potential.g) {
        f["g"] = *cfg.potential.g;
    }
    if (!cfg.potential.table_path.empty()) {
        f["table"] = cfg.potential.table_path;
    }
    f["mass"]   = cfg.mass;
    f["l"]      = cfg.l;
    f["mode"]   = to_string(cfg.mode);
    f["branch"] = to_string(cfg.branch);
    if (grid) {
        f["grid"]   = to_string(grid->kind());
        f["r_min"]  = grid->r_min();
        f["r_max"]  = grid->r_max();
        f["points"] = grid->size();
    }
    f["tolerance"] = cfg.tolerance;
    f["version"]   = version();
}

void put_indicial(Report& r, IndicialData const& d)
{
    auto& f                   = r.fields;
    f["class"]                = to_string(d.cls);
    f["g_eff"]                = d.g;
    f["p"]                    = number_or_null(d.P);
    f["a_plus"]               = d.exponents ? ordered_json(d.exponents->first) : ordered_json(nullptr);
    f["a_minus"]              = d.exponents ? ordered_json(d.exponents->second) : ordered_json(nullptr);
    f["strict_admissible"]    = d.strict_admissible;
    f["permissive_admissible"] = d.permissive_admissible;
    f["ambiguous_strict"]     = d.ambiguous_strict;
    f["ambiguous_permissive"] = d.ambiguous_permissive;
    f["regime_boundary"]      = d.regime_boundary;
}

void put_eigen(Report& r, EigenResult const& e, bool samples)
{
    auto& f              = r.fields;
    f["energy"]          = e.E;
    f["nodes"]           = e.nodes;
    f["match_defect"]    = e.match_defect;
    f["matching_radius"] = e.matching_radius;
    f["branch_exponent"] = e.branch;
    f["iterations"]      = e.iterations;
    f["norm"]            = e.norm;
    if (samples) {
        f["r"]    = e.r;
        f["u"]    = e.u_samples;
        r.columns = {"r", "u"};
    }
}

void put_identity(Report& r, IdentityReport const& rep)
{
    auto& f                = r.fields;
    f["check"]             = rep.check;
    f["radius"]            = rep.radius;
    f["value"]             = rep.value;
    f["expected"]          = rep.expected;
    f["abs_error"]         = rep.abs_error;
    f["converged"]         = rep.converged;
    f["quadrature_points"] = rep.quadrature_points;
    f["observed_order"]    = rep.observed_order;
    f["boundary_flux"]     = rep.boundary_flux;
    if (rep.check == "operator-identity") {
        f["flux_term"]   = rep.flux_term;
        f["volume_term"] = rep.volume_term;
    }
    std::vector<double> pts, vals;
    for (auto const& [p, v] : rep.sequence) {
        pts.push_back(p);
        vals.push_back(v);
    }
    f["sequence_points"] = pts;
    f["sequence_values"] = vals;
    r.columns            = {"sequence_points", "sequence_values"};
}

void write_json(Report const& r, std::ostream& os)
{
    os << r.fields.dump(2) << '\n';
}

void write_csv(Report const& r, std::ostream& os)
{
    if (r.columns.empty()) {
        throw UsageError("this report has no table; use --output json or table");
    }
    std::size_t rows = 0;
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
        os << (c ? "," : "") << r.columns[c];
        rows = std::max(rows, r.fields.at(r.columns[c]).size());
    }
    os << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t c = 0; c < r.columns.size(); ++c) {
            auto const& col = r.fields.at(r.columns[c]);
            os << (c ? "," : "") << (i < col.size() ? cell(col[i]) : "");
        }
        os << '\n';
    }
}

void write_table(Report const& r, std::ostream& os)
{
    std::size_t width = 0;
    for (auto const& [k, v] : r.fields.items()) {
        if (!v.is_array() || std::find(r.columns.begin(), r.columns.end(), k) == r.columns.end()) {
            width = std::max(width, k.size());
        }
    }
    for (auto const& [k, v] : r.fields.items()) {
        if (std::find(r.columns.begin(), r.columns.end(), k) != r.columns.end()) {
            continue;
        }
        os << std::left << std::setw(static_cast<int>(width) + 2) << k;
        if (v.is_array()) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                os << (i ? ", " : "") << cell(v[i]);
            }
            os << '\n';
        } else {
            os << cell(v) << '\n';
        }
    }
    if (r.columns.empty()) {
        return;
    }
    os << '\n';
    for (auto const& c : r.columns) {
        os << std::setw(22) << c;
    }
    os << '\n';
    std::size_t rows = r.fields.at(r.columns.front()).size();
    for (std::size_t i = 0; i < rows; ++i) {
        for (auto const& c : r.columns) {
            auto const& col = r.fields.at(c);
            os << std::setw(22) << (i < col.size() ? cell(col[i]) : "");
        }
        os << '\n';
    }
}

IndicialData indicial_from_json(json const& j)
{
    IndicialData d;
    d.cls = origin_class_from_string(j.at("class").get<std::string>());
    d.l   = j.at("l").get<int>();
    d.g   = j.at("g_eff").get<double>();
    if (!j.at("p").is_null()) {
        d.P = j.at("p").get<double>();
    }
    if (!j.at("a_plus").is_null()) {
        d.exponents = std::pair{j.at("a_plus").get<double>(), j.at("a_minus").get<double>()};
    }
    d.strict_admissible    = j.at("strict_admissible").get<std::vector<double>>();
    d.permissive_admissible = j.at("permissive_admissible").get<std::vector<double>>();
    d.ambiguous_strict     = j.at("ambiguous_strict").get<bool>();
    d.ambiguous_permissive = j.at("ambiguous_permissive").get<bool>();
    d.regime_boundary      = j.at("regime_boundary").get<bool>();
    return d;
}

EigenResult eigen_from_json(json const& j)
{
    EigenResult e;
    e.E               = j.at("energy").get<double>();
    e.nodes           = j.at("nodes").get<int>();
    e.match_defect    = j.at("match_defect").get<double>();
    e.matching_radius = j.at("matching_radius").get<double>();
    e.branch          = j.at("branch_exponent").get<double>();
    e.iterations      = j.at("iterations").get<int>();
    e.norm            = j.at("norm").get<double>();
    e.mode            = boundary_mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("r")) {
        e.r         = j.at("r").get<std::vector<double>>();
        e.u_samples = j.at("u").get<std::vector<double>>();
    }
    return e;
}

void validate_report(json const& j)
{
    auto fail = [](std::string const& m) { throw DomainError("report: " + m); };
    for (char const* k : {"command", "status", "version", "wall_time"}) {
        if (!j.contains(k)) {
            fail(std::string("missing ") + k);
        }
    }
    std::string const status = j.at("status").get<std::string>();
    if (status != "ok" && status != "error") {
        fail("status must be ok or error");
    }
    if (status == "error" && !j.contains("error")) {
        fail("error report without error name");
    }
    if (j.contains("strict_admissible")) {
        validate(indicial_from_json(j));
    }
    if (status == "ok" && j.contains("match_defect")) {
        validate(eigen_from_json(j));
    }
    if (j.contains("value") && j.contains("expected")) {
        double err = std::abs(j.at("value").get<double>() - j.at("expected").get<double>());
        if (std::abs(err - j.at("abs_error").get<double>()) > 1e-12 * std::max(1.0, err)) {
            fail("abs_error inconsistent with value and expected");
        }
    }
    if (j.contains("energies")) {
        auto E = j.at("energies").get<std::vector<double>>();
        for (std::size_t i = 1; i < E.size(); ++i) {
            if (!(E[i] > E[i - 1])) {
                fail("energies not increasing");
            }
        }
        auto d = j.at("match_defects").get<std::vector<double>>();
        for (double x : d) {
            if (!(std::abs(x) < 1e-8)) {
                fail("match defect above 1e-8");
            }
        }
    }
}

} // namespace radialbc::cli
