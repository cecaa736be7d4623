// Command-line driver: realize a finite group as the isometry group of a
// finite metric space, enumerate isometries, or re-verify stored artifacts.
#include <iostream>

#include "CLI11.hpp"

#include "isogroup/cli.hpp"

int main(int argc, char** argv) {
  isogroup::CliConfig config;

  CLI::App app{
      "isogroup: build finite metric spaces with a prescribed isometry "
      "group, enumerate isometries, and verify stored realizations"};
  app.require_subcommand(1);

  CLI::App* realize = app.add_subcommand(
      "realize", "build a space whose isometry group is the given group");
  realize->add_option("--group", config.group_path,
                      "group JSON (cayley table or permutation generators)")
      ->required();
  realize->add_option("--metric", config.metric,
                      "base metric: discrete | word:<i,j,...> | file:<path>");
  realize->add_option("--pipeline", config.pipeline, "compact | polish");
  realize->add_option("--cover", config.cover, "greedy | pairs");
  realize->add_option("--offsets", config.offsets, "harmonic | dyadic");
  realize->add_flag("--include-y-layer", config.include_y_layer,
                    "also adjoin the offset-zero function layer (compact only)");
  realize->add_option("--out", config.out_path,
                      "output space path (default K.json)");
  realize->add_option("--report", config.report_path, "report JSON path");
  realize->add_option("--provenance", config.provenance_path,
                      "provenance JSON path");
  realize->add_option("--node-budget", config.node_budget,
                      "search node budget for isometry enumeration");

  CLI::App* iso = app.add_subcommand(
      "iso", "enumerate all isometries of a metric space file");
  iso->add_option("--space", config.space_path, "metric space JSON")
      ->required();
  iso->add_flag("--naive", config.naive,
                "use the permutation-filter oracle (n <= 8)");
  iso->add_option("--out", config.out_path,
                  "output path (default: print to stdout)");
  iso->add_option("--node-budget", config.node_budget,
                  "search node budget for isometry enumeration");

  CLI::App* verify = app.add_subcommand(
      "verify", "re-verify a stored realization from its artifacts");
  verify->add_option("--group", config.group_path, "group JSON")->required();
  verify->add_option("--space", config.space_path, "realized space JSON")
      ->required();
  verify->add_option("--provenance", config.provenance_path,
                     "provenance JSON written by realize")
      ->required();
  verify->add_option("--report", config.report_path, "report JSON path");
  verify->add_option("--node-budget", config.node_budget,
                     "search node budget for isometry enumeration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (realize->parsed()) config.subcommand = "realize";
  if (iso->parsed()) config.subcommand = "iso";
  if (verify->parsed()) config.subcommand = "verify";
  return isogroup::run_cli(std::move(config), std::cout, std::cerr);
}
