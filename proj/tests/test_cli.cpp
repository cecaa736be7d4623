#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const char* cli_path() { return ISOGROUP_CLI_PATH; }

/// One scratch directory per test case, removed on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl =
        (fs::temp_directory_path() / "isogroup-cli-XXXXXX").string();
    char* made = mkdtemp(tmpl.data());
    REQUIRE(made != nullptr);
    path = made;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run_in(const TempDir& dir, const std::string& args,
           const std::string& env = "") {
  std::string cmd = "cd " + dir.path.string() + " && " + env +
                    (env.empty() ? "" : " ") + "\"" + cli_path() + "\" " +
                    args + " >stdout.txt 2>stderr.txt";
  int rc = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

void write_json(const std::string& path, const json& j) {
  spill(path, j.dump(2) + "\n");
}

json cyclic3_group() {
  return json{{"cayley", {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}}};
}

json discrete_space(int n) {
  json labels = json::array();
  json d = json::array();
  for (int i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    json row = json::array();
    for (int j = 0; j < n; ++j) row.push_back(i == j ? "0" : "1");
    d.push_back(row);
  }
  return json{{"labels", labels}, {"d", d}};
}

/// Runs realize for the three-element cyclic group and returns the
/// artifact directory; asserts success.
void realize_c3(const TempDir& dir) {
  write_json(dir.file("g.json"), cyclic3_group());
  int rc = run_in(dir, "realize --group g.json");
  REQUIRE(rc == 0);
}

}  // namespace

TEST_CASE("cli: realize writes artifacts and reports success") {
  TempDir dir;
  realize_c3(dir);
  CHECK(fs::exists(dir.file("K.json")));
  CHECK(fs::exists(dir.file("K.provenance.json")));
  CHECK(fs::exists(dir.file("K.report.json")));

  json k = json::parse(slurp(dir.file("K.json")));
  CHECK(k.at("labels").size() == 13);
  json report = json::parse(slurp(dir.file("K.report.json")));
  CHECK(report.at("realized") == true);
  CHECK(report.at("iso_order_of_k") == 3);
  CHECK(slurp(dir.file("stdout.txt")).find("realized: yes") !=
        std::string::npos);
}

TEST_CASE("cli: artifacts are byte identical across runs") {
  TempDir a;
  TempDir b;
  realize_c3(a);
  realize_c3(b);
  CHECK(slurp(a.file("K.json")) == slurp(b.file("K.json")));
  CHECK(slurp(a.file("K.provenance.json")) ==
        slurp(b.file("K.provenance.json")));
  CHECK(slurp(a.file("K.report.json")) == slurp(b.file("K.report.json")));
}

TEST_CASE("cli: verify accepts a fresh realization") {
  TempDir dir;
  realize_c3(dir);
  int rc = run_in(dir,
                  "verify --group g.json --space K.json "
                  "--provenance K.provenance.json --report verify-report.json");
  CHECK(rc == 0);
  json report = json::parse(slurp(dir.file("verify-report.json")));
  CHECK(report.at("realized") == true);
  CHECK(report.at("recovery_verified") == true);
}

TEST_CASE("cli: verify flags a tampered distance as a semantic failure") {
  TempDir dir;
  realize_c3(dir);
  json k = json::parse(slurp(dir.file("K.json")));
  // Shrink one base distance within its triangle-inequality slack: the
  // matrix stays a valid metric, but the embedded copy of the group no
  // longer matches its translation space.
  k["d"][1][0] = "9/10";
  k["d"][0][1] = "9/10";
  write_json(dir.file("K.json"), k);
  int rc = run_in(dir,
                  "verify --group g.json --space K.json "
                  "--provenance K.provenance.json");
  CHECK(rc == 1);
}

TEST_CASE("cli: verify flags consistently removed points as semantic") {
  TempDir dir;
  realize_c3(dir);
  json k = json::parse(slurp(dir.file("K.json")));
  json pv = json::parse(slurp(dir.file("K.provenance.json")));
  // Drop orbit point 3 from both files, keeping them mutually consistent.
  k["labels"].erase(3);
  k["d"].erase(3);
  for (auto& row : k["d"]) row.erase(3);
  pv["points"].erase(3);
  write_json(dir.file("K.json"), k);
  write_json(dir.file("K.provenance.json"), pv);
  int rc = run_in(dir,
                  "verify --group g.json --space K.json "
                  "--provenance K.provenance.json");
  CHECK(rc == 1);
}

TEST_CASE("cli: verify flags inconsistent artifacts as input errors") {
  TempDir dir;
  realize_c3(dir);

  // A provenance label that names no point of the space.
  json pv = json::parse(slurp(dir.file("K.provenance.json")));
  pv["points"][3]["label"] = "F1:gX";
  write_json(dir.file("pv-bad-label.json"), pv);
  CHECK(run_in(dir,
               "verify --group g.json --space K.json "
               "--provenance pv-bad-label.json") == 2);

  // A group whose order disagrees with the artifacts.
  write_json(dir.file("g4.json"),
             json{{"cayley",
                   {{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}}}});
  CHECK(run_in(dir,
               "verify --group g4.json --space K.json "
               "--provenance K.provenance.json") == 2);
}

TEST_CASE("cli: malformed inputs exit with the input error code") {
  TempDir dir;
  spill(dir.file("bad.json"), "{ not json");
  CHECK(run_in(dir, "realize --group bad.json") == 2);

  write_json(dir.file("notsquare.json"), json{{"cayley", {{0, 1}, {1}}}});
  CHECK(run_in(dir, "realize --group notsquare.json") == 2);

  write_json(dir.file("g.json"), cyclic3_group());
  CHECK(run_in(dir, "realize --group g.json --metric word:x") == 2);
  CHECK(run_in(dir, "realize --group g.json --pipeline banana") == 2);
  CHECK(run_in(dir, "") == 2);
}

TEST_CASE("cli: iso prints the isometry list") {
  TempDir dir;
  json rigid{{"labels", {"a", "b", "c"}},
             {"d",
              {{"0", "1/2", "3/4"}, {"1/2", "0", "1"}, {"3/4", "1", "0"}}}};
  write_json(dir.file("space.json"), rigid);
  CHECK(run_in(dir, "iso --space space.json") == 0);
  json out = json::parse(slurp(dir.file("stdout.txt")));
  CHECK(out.at("n") == 3);
  CHECK(out.at("elements") == json::array({{0, 1, 2}}));

  CHECK(run_in(dir, "iso --space space.json --naive --out iso.json") == 0);
  json file_out = json::parse(slurp(dir.file("iso.json")));
  CHECK(file_out.at("elements") == json::array({{0, 1, 2}}));
  CHECK(slurp(dir.file("stdout.txt")).find("isometries: 1") !=
        std::string::npos);
}

TEST_CASE("cli: the oracle size limit is an input error") {
  TempDir dir;
  write_json(dir.file("nine.json"), discrete_space(9));
  CHECK(run_in(dir, "iso --space nine.json --naive") == 2);
  CHECK(run_in(dir, "iso --space nine.json --node-budget 1000000") == 0);
}

TEST_CASE("cli: node budget exhaustion exits with its own code") {
  TempDir dir;
  write_json(dir.file("g.json"), cyclic3_group());
  CHECK(run_in(dir, "realize --group g.json --node-budget 1") == 3);
  // The environment variable overrides the flag in both directions.
  CHECK(run_in(dir, "realize --group g.json --node-budget 100000000",
               "ISOGROUP_NODE_BUDGET=1") == 3);
  CHECK(run_in(dir, "realize --group g.json --node-budget 1",
               "ISOGROUP_NODE_BUDGET=100000000") == 0);
  CHECK(run_in(dir, "realize --group g.json", "ISOGROUP_NODE_BUDGET=abc") ==
        2);
}

TEST_CASE("cli: help is not an error") {
  TempDir dir;
  CHECK(run_in(dir, "--help") == 0);
  CHECK(run_in(dir, "realize --help") == 0);
}
