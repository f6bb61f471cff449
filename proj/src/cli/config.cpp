#include "radialbc/cli/config.hpp"

#include "radialbc/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace radialbc::cli {

namespace {

struct CommandName
{
    Command command;
    char const* name;
};

constexpr CommandName command_names[] = {
    {Command::Classify, "classify"}, {Command::DeltaCheck, "delta-check"}, {Command::IdentityCheck, "identity-check"},
    {Command::Solve, "solve"},       {Command::Spectrum, "spectrum"},      {Command::KgSolve, "kg-solve"},
};

std::string trim(std::string s)
{
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string normalise_key(std::string k)
{
    std::replace(k.begin(), k.end(), '_', '-');
    return k;
}

double to_number(std::string const& key, std::string const& text)
{
    std::size_t used = 0;
    double v         = 0;
    try {
        v = std::stod(text, &used);
    } catch (std::exception const&) {
        used = 0;
    }
    if (used == 0 || trim(text.substr(used)) != "" || !std::isfinite(v)) {
        throw UsageError("invalid number for " + key + ": '" + text + "'");
    }
    return v;
}

int to_int(std::string const& key, std::string const& text)
{
    double v = to_number(key, text);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw UsageError(key + " must be an integer");
    }
    return static_cast<int>(v);
}

bool to_bool(std::string const& key, std::string const& text)
{
    if (text == "true" || text == "1" || text == "yes" || text.empty()) {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw UsageError(key + " must be true or false");
}

BranchSelector parse_branch(std::string const& text)
{
    if (text == "principal") {
        return BranchSelector::principal();
    }
    if (text == "irregular") {
        return BranchSelector::irregular();
    }
    if (text.rfind("mix:", 0) == 0) {
        return BranchSelector::mix(to_number("branch", text.substr(4)));
    }
    throw UsageError("branch must be principal, irregular or mix:RATIO");
}

Sweep parse_sweep(std::string const& text)
{
    auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw UsageError("sweep must look like g=FROM:TO:COUNT");
    }
    Sweep s;
    s.parameter = trim(text.substr(0, eq));
    if (s.parameter != "g") {
        throw UsageError("only g can be swept");
    }
    std::vector<std::string> parts;
    std::stringstream ss(text.substr(eq + 1));
    for (std::string item; std::getline(ss, item, ':');) {
        parts.push_back(item);
    }
    if (parts.size() != 3) {
        throw UsageError("sweep must look like g=FROM:TO:COUNT");
    }
    s.from  = to_number("sweep", parts[0]);
    s.to    = to_number("sweep", parts[1]);
    s.count = to_int("sweep", parts[2]);
    if (s.count < 1) {
        throw UsageError("sweep needs at least one point");
    }
    return s;
}

} // namespace

std::string to_string(Command c)
{
    for (auto const& [cmd, name] : command_names) {
        if (cmd == c) {
            return name;
        }
    }
    return "?";
}

Command command_from_string(std::string const& s)
{
    for (auto const& [cmd, name] : command_names) {
        if (s == name) {
            return cmd;
        }
    }
    throw UsageError("unknown command '" + s + "'");
}

std::string to_string(OutputFormat f)
{
    switch (f) {
        case OutputFormat::Json:
            return "json";
        case OutputFormat::Csv:
            return "csv";
        case OutputFormat::Table:
            return "table";
    }
    return "?";
}

std::vector<double> Sweep::values() const
{
    std::vector<double> v;
    for (int i = 0; i < count; ++i) {
        v.push_back(count == 1 ? from : from + (to - from) * i / (count - 1));
    }
    return v;
}

std::vector<std::string> const& known_keys()
{
    static std::vector<std::string> const keys = {
        "potential", "alpha", "omega",  "g",       "table", "mass",          "l",      "mode",
        "branch",    "grid",  "r-min",  "r-max",   "points", "nodes",        "n-max",  "e-min",
        "e-max",     "rescale", "samples", "test-function", "radius", "sweep", "output", "out",
    };
    return keys;
}

std::map<std::string, std::string> read_config_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read config file " + path);
    }
    std::map<std::string, std::string> out;
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        out[normalise_key(trim(line.substr(0, eq)))] = trim(line.substr(eq + 1));
    }
    return out;
}

RunConfig resolve(std::map<std::string, std::string> const& settings, std::optional<std::string> const& env_tolerance)
{
    auto const& keys = known_keys();
    for (auto const& [k, v] : settings) {
        if (k != "command" && std::find(keys.begin(), keys.end(), k) == keys.end()) {
            throw UsageError("unknown key '" + k + "'");
        }
    }
    auto get = [&](char const* k) -> std::optional<std::string> {
        auto it = settings.find(k);
        return it == settings.end() ? std::nullopt : std::optional(it->second);
    };
    auto num = [&](char const* k) -> std::optional<double> {
        auto s = get(k);
        return s ? std::optional(to_number(k, *s)) : std::nullopt;
    };

    RunConfig c;
    auto cmd = get("command");
    if (!cmd) {
        throw UsageError("missing command");
    }
    c.command = command_from_string(*cmd);

    c.potential.kind       = get("potential").value_or("");
    c.potential.alpha      = num("alpha");
    c.potential.omega      = num("omega");
    c.potential.g          = num("g");
    c.potential.table_path = get("table").value_or("");
    c.mass                 = num("mass").value_or(1.0);
    if (auto l = get("l")) {
        c.l = to_int("l", *l);
    }
    try {
        if (auto m = get("mode")) {
            c.mode = boundary_mode_from_string(*m);
        }
        if (auto g = get("grid")) {
            c.grid_kind = grid_kind_from_string(*g);
        }
    } catch (radialbc::error const& e) {
        throw UsageError(e.what());
    }
    if (auto b = get("branch")) {
        c.branch = parse_branch(*b);
    }
    c.r_min = num("r-min");
    c.r_max = num("r-max");
    if (auto p = get("points")) {
        int n = to_int("points", *p);
        if (n < static_cast<int>(Grid::min_points)) {
            throw UsageError("points must be at least " + std::to_string(Grid::min_points));
        }
        c.points = static_cast<std::size_t>(n);
    }
    if (auto n = get("nodes")) {
        c.nodes = to_int("nodes", *n);
    }
    if (auto n = get("n-max")) {
        c.n_max = to_int("n-max", *n);
    }
    c.e_min   = num("e-min");
    c.e_max   = num("e-max");
    c.rescale = num("rescale");
    if (auto s = get("samples")) {
        c.samples = to_bool("samples", *s);
    }
    c.test_function = get("test-function").value_or(c.test_function);
    c.radius        = num("radius");
    if (auto s = get("sweep")) {
        c.sweep = parse_sweep(*s);
    }
    if (auto o = get("output")) {
        if (*o == "json") {
            c.output = OutputFormat::Json;
        } else if (*o == "csv") {
            c.output = OutputFormat::Csv;
        } else if (*o == "table") {
            c.output = OutputFormat::Table;
        } else {
            throw UsageError("output must be json, csv or table");
        }
    }
    c.out_path = get("out").value_or("");
    if (env_tolerance) {
        c.tolerance = to_number("RADIALBC_TOLERANCE", *env_tolerance);
        if (!(c.tolerance > 0)) {
            throw UsageError("RADIALBC_TOLERANCE must be positive");
        }
    }

    // consistency
    if (c.branch.kind == BranchSelector::Kind::Mix && c.mode == BoundaryMode::Strict) {
        throw UsageError("a mix ratio needs --mode permissive");
    }
    if (!(c.mass > 0)) {
        throw UsageError("mass must be positive");
    }
    if (c.l < 0 || c.nodes < 0 || c.n_max < 0) {
        throw UsageError("l, nodes and n-max must be non-negative");
    }
    if (c.sweep && c.command != Command::Classify && c.command != Command::Solve) {
        throw UsageError("--sweep applies to classify and solve");
    }
    if (c.rescale && !(*c.rescale > 0)) {
        throw UsageError("rescale must be positive");
    }

    bool const needs_potential = c.command == Command::Classify || c.command == Command::Solve ||
                                 c.command == Command::Spectrum ||
                                 (c.command == Command::IdentityCheck && c.test_function == "eigenstate");
    if (c.command == Command::KgSolve) {
        if (!c.potential.kind.empty() && c.potential.kind != "coulomb") {
            throw UsageError("kg-solve uses the Coulomb vector potential only");
        }
        c.potential.kind = "coulomb";
    }
    if (c.sweep && c.potential.kind.empty()) {
        c.potential.kind = "inverse-square";
    }
    if (needs_potential || c.command == Command::KgSolve) {
        auto const& k = c.potential.kind;
        auto require  = [&](std::optional<double> const& v, char const* name) {
            if (!v) {
                throw UsageError("potential '" + k + "' needs --" + name);
            }
        };
        if (k.empty()) {
            throw UsageError("missing --potential");
        } else if (k == "coulomb") {
            require(c.potential.alpha, "alpha");
        } else if (k == "harmonic") {
            require(c.potential.omega, "omega");
        } else if (k == "inverse-square") {
            if (!c.sweep) {
                require(c.potential.g, "g");
            }
        } else if (k == "table") {
            if (c.potential.table_path.empty()) {
                throw UsageError("potential 'table' needs --table FILE");
            }
        } else if (k != "free") {
            throw UsageError("unknown potential '" + k + "'");
        }
    }
    if (c.command == Command::DeltaCheck || (c.command == Command::IdentityCheck && !needs_potential)) {
        auto names = gallery::names();
        if (std::find(names.begin(), names.end(), c.test_function) == names.end()) {
            throw UsageError("unknown test function '" + c.test_function + "'");
        }
        if (c.radius && !(*c.radius > 0)) {
            throw UsageError("radius must be positive");
        }
    }
    return c;
}

std::optional<RunConfig> parse_config(std::vector<std::string> const& args)
{
    CLI::App app{"Radial Schroedinger and Klein-Gordon boundary analysis", "radialbc"};
    std::string command, config_path;
    app.add_option("command", command, "classify | delta-check | identity-check | solve | spectrum | kg-solve")
        ->required();
    app.add_option("--config", config_path, "key = value file; flags override it");

    std::map<std::string, std::string> flags;
    bool samples = false;
    for (auto const& k : known_keys()) {
        if (k == "samples") {
            app.add_flag("--samples", samples, "include r, u samples in solve reports");
        } else {
            app.add_option("--" + k, flags[k]);
        }
    }
    app.get_option("--mass")->description("particle mass m (default 1)");
    app.get_option("--mode")->description("strict | permissive");
    app.get_option("--branch")->description("principal | irregular | mix:RATIO");
    app.get_option("--grid")->description("log | uniform");
    app.get_option("--sweep")->description("g=FROM:TO:COUNT");
    app.get_option("--output")->description("json | csv | table");

    std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (CLI::CallForHelp const&) {
        std::cout << app.help();
        return std::nullopt;
    } catch (CLI::ParseError const& e) {
        throw UsageError(e.what());
    }

    std::map<std::string, std::string> settings;
    if (!config_path.empty()) {
        settings = read_config_file(config_path);
    }
    for (auto const& [k, v] : flags) {
        if (app.count("--" + k) > 0) {
            settings[k] = v;
        }
    }
    if (samples) {
        settings["samples"] = "true";
    }
    settings["command"] = command;

    std::optional<std::string> env;
    if (char const* t = std::getenv("RADIALBC_TOLERANCE")) {
        env = t;
    }
    return resolve(settings, env);
}

Potential make_potential(PotentialSpec const& spec)
{
    auto const& k = spec.kind;
    if (k == "coulomb") {
        return Coulomb{spec.alpha.value_or(1)};
    }
    if (k == "harmonic") {
        return HarmonicOscillator{spec.omega.value_or(1)};
    }
    if (k == "inverse-square") {
        return InverseSquare{spec.g.value_or(0)};
    }
    if (k == "free") {
        return FreeParticle{};
    }
    if (k == "table") {
        std::ifstream in(spec.table_path);
        if (!in) {
            throw UsageError("cannot read potential table " + spec.table_path);
        }
        std::vector<double> r, v;
        for (std::string line; std::getline(in, line);) {
            if (auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            std::istringstream ls(line);
            double a = 0, b = 0;
            if (ls >> a >> b) {
                r.push_back(a);
                v.push_back(b);
            }
        }
        return Tabulated(std::move(r), std::move(v));
    }
    throw UsageError("unknown potential '" + k + "'");
}

double length_scale(RunConfig const& cfg)
{
    if (cfg.command == Command::KgSolve) {
        double a = cfg.potential.alpha.value_or(0);
        return a > 0 ? 1 / (cfg.mass * a) : 1 / cfg.mass;
    }
    if (cfg.potential.kind.empty()) {
        return 1;
    }
    return radialbc::length_scale(make_potential(cfg.potential), cfg.mass).value_or(1.0);
}

Grid resolve_grid(RunConfig const& cfg)
{
    double const L = length_scale(cfg);
    double r_min   = cfg.r_min.value_or(1e-6 * L);
    double r_max   = 0;
    if (cfg.r_max) {
        r_max = *cfg.r_max;
    } else {
        auto const& k = cfg.potential.kind;
        int top       = cfg.command == Command::Spectrum || cfg.command == Command::KgSolve ? cfg.n_max : cfg.nodes;
        double n      = top + cfg.l + 1;
        if (k == "coulomb") {
            r_max = 30 * L * n * n;
        } else if (k == "harmonic") {
            r_max = 10 * L * std::sqrt(1 + (2 * top + cfg.l) / 10.0);
        } else {
            r_max = 30 * L; // the last sample for tables
        }
    }
    try {
        return Grid(cfg.grid_kind, r_min, r_max, cfg.points);
    } catch (radialbc::error const& e) {
        throw UsageError(std::string("grid: ") + e.what());
    }
}

} // namespace radialbc::cli
