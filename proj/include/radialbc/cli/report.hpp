#pragma once

#include "radialbc/cli/config.hpp"
#include "radialbc/distributional.hpp"
#include "radialbc/eigensolver.hpp"
#include "radialbc/radial_model.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace radialbc::cli {

/// Flat report: scalar fields and equal-length column arrays. `columns`
/// names the arrays that make up the CSV table, in order.
struct Report
{
    nlohmann::ordered_json fields = nlohmann::ordered_json::object();
    std::vector<std::string> columns;
};

char const* version();

/// Echo of the resolved configuration (potential, grid, mode, ...).
void echo_inputs(Report& r, RunConfig const& cfg, Grid const* grid);

void put_indicial(Report& r, IndicialData const& d);
void put_eigen(Report& r, EigenResult const& e, bool samples);
void put_identity(Report& r, IdentityReport const& rep);

void write_json(Report const& r, std::ostream& os);
/// Throws UsageError when the report has no table.
void write_csv(Report const& r, std::ostream& os);
void write_table(Report const& r, std::ostream& os);

IndicialData indicial_from_json(nlohmann::json const& j);
EigenResult eigen_from_json(nlohmann::json const& j);

/// Re-checks a parsed report against the invariants of the types it was
/// built from. Throws DomainError on the first violation.
void validate_report(nlohmann::json const& j);

} // namespace radialbc::cli
