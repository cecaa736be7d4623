/// @file cli.hpp
/// @brief Command-line front end: realize a group, enumerate isometries,
/// and re-verify stored artifacts.
///
/// Exit-code contract shared by all subcommands:
///   0 — success (for realize/verify: the space realizes the group),
///   1 — verification failure (construction or artifacts are wrong),
///   2 — invalid input (files, flags, malformed data),
///   3 — search budget exhausted.
#pragma once

#include <iosfwd>
#include <string>

#include "isogroup/iso_search.hpp"

namespace isogroup {

struct CliConfig {
  std::string subcommand;  // realize | iso | verify
  std::string group_path;
  std::string space_path;
  std::string metric = "discrete";  // discrete | word:<i,j,...> | file:<path>
  std::string pipeline = "compact";
  std::string cover = "greedy";
  std::string offsets = "harmonic";
  bool include_y_layer = false;
  std::string out_path;
  std::string report_path;
  std::string provenance_path;
  long long node_budget = kDefaultNodeBudget;
  bool naive = false;
};

/// Builds a space realizing the group, writes space/provenance/report files.
int run_realize(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Enumerates the isometry group of a space file.
int run_iso(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Re-verifies a stored realization from its artifacts alone.
int run_verify(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on subcommand after applying the ISOGROUP_NODE_BUDGET
/// environment override.
int run_cli(CliConfig config, std::ostream& out, std::ostream& err);

}  // namespace isogroup
