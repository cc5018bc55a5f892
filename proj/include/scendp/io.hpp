#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "scendp/oudp.hpp"
#include "scendp/scenario.hpp"
#include "scendp/split.hpp"

namespace scendp {

struct DsirpInstance {
  CustomerSpec spec;
  DeliveryCostModel delivery;
  HoldingPenaltyModel holding;
};

/// Either instantiation, as loaded from an instance file.
using ParsedInstance = std::variant<RoutingInstance, DsirpInstance>;

// Instance grammar ('#' starts a comment, blank lines ignored):
//
// routing files open with the header line
//   n Q beta        (beta a number for penalized mode, or the word "hard")
// followed by n+2 rows of the (n+2) x (n+2) travel cost matrix.
//
// inventory files open with the word "dsirp" followed by key lines:
//   U <int>  I0 <int>  H <int>  R <int>
//   holding standard <h> <rho>   |  holding table <v0> ... <vU>
//   delivery linear <fixed> <unit>
//   delivery option <t> <r> <fixed> <unit>
//   delivery table <t> <F(0)> ... <F(U)>
//
// Malformed lines and invariant violations are reported with their line
// number.
ParsedInstance parse_instance_text(const std::string& text,
                                   const std::string& name);
ParsedInstance parse_instance_file(const std::string& path);

void write_routing_instance(const RoutingInstance& instance, std::ostream& out);

// Scenario container formats. The binary layout is little-endian:
//   magic "SCNB" | u16 version=1 | u32 rows | u32 cols | u16 dtype=1 (u32)
// followed by rows*cols u32 values, scenario-major (each scenario's column is
// contiguous, so a prefix of m scenarios is a prefix of the file). The CSV
// form is "rows,cols" on the first line, then rows lines of cols values.
// Paths ending in .csv select the text form.
ScenarioBatch read_scenario_file(const std::string& path);
void write_scenario_file(const ScenarioBatch& batch, const std::string& path);

ScenarioBatch read_scenario_binary(std::istream& in, const std::string& name);
void write_scenario_binary(const ScenarioBatch& batch, std::ostream& out);
ScenarioBatch read_scenario_csv(std::istream& in, const std::string& name);
void write_scenario_csv(const ScenarioBatch& batch, std::ostream& out);

/// One row of the fixed experiment report schema.
struct ReportRow {
  std::string experiment;
  std::string instance;
  std::uint64_t m = 0;
  std::int64_t rep = 0;  // -1 for aggregate rows
  std::string metric;
  double value = 0.0;
  double elapsed_ms = 0.0;
  std::uint64_t seed = 0;
};

/// Result-affecting configuration echoed at the top of every report file.
/// Execution knobs (threads, batch size, memory budget) are deliberately not
/// part of it: results are bitwise independent of them and report files must
/// compare equal across execution modes.
struct RunMetadata {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> params;
};

// Stable number rendering used by every report writer.
std::string format_value(double v);

void write_report_csv(std::ostream& out, const RunMetadata& meta,
                      const std::vector<ReportRow>& rows);

void write_timing_csv(std::ostream& out, const std::vector<BatchTiming>& rows);

}  // namespace scendp
