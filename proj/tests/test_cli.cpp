#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqsdc/cli.hpp"

using namespace cqsdc;

namespace {

struct CliOutput {
  int code;
  std::string out;
  std::string err;
};

CliOutput dispatch(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_golden(const std::string& name) {
  std::ifstream file(std::string(CQSDC_GOLDEN_DIR) + "/" + name);
  REQUIRE(file.good());
  std::ostringstream content;
  content << file.rdbuf();
  return content.str();
}

int count_lines_containing(const std::string& text, const std::string& needle) {
  int count = 0;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.find(needle) != std::string::npos) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("tables command and its check mode", "[cli]") {
  const auto plain = dispatch({"tables", "cluster"});
  REQUIRE(plain.code == 0);
  REQUIRE(count_lines_containing(plain.out, "|") == 0);
  REQUIRE(plain.out.find("protocol: cluster") != std::string::npos);

  const auto checked = dispatch({"tables", "cluster", "--check"});
  REQUIRE(checked.code == 0);
  REQUIRE(checked.out.find("16/16 rows match the published table") !=
          std::string::npos);

  const auto brown = dispatch({"tables", "brown", "--check"});
  REQUIRE(brown.code == 3);
  REQUIRE(brown.out.find("8/16 rows match the published table") !=
          std::string::npos);
  REQUIRE(count_lines_containing(brown.out, "derived=") == 8);

  const auto bogus = dispatch({"tables", "ghz"});
  REQUIRE(bogus.code == 2);
}

TEST_CASE("run command executes sessions", "[cli]") {
  const auto cluster = dispatch({"run", "cluster", "01", "--seed", "7"});
  REQUIRE(cluster.code == 0);
  REQUIRE(cluster.out.find("decoded: 01") != std::string::npos);
  REQUIRE(cluster.out.find("seed: 7") != std::string::npos);

  const auto brown = dispatch({"run", "brown", "10", "--seed", "7",
                               "--recipient", "1", "--permitter", "2"});
  REQUIRE(brown.code == 0);
  REQUIRE(brown.out.find("decoded: 10") != std::string::npos);

  SECTION("usage errors") {
    REQUIRE(dispatch({"run", "cluster", "21", "--seed", "1"}).code == 2);
    REQUIRE(dispatch({"run", "cluster", "01", "--format", "json"}).code == 2);
    REQUIRE(dispatch({"run", "cluster", "01", "--seed", "1", "--recipient",
                      "2"}).code == 2);
    REQUIRE(dispatch({"run", "brown", "01", "--seed", "1", "--recipient", "2",
                      "--permitter", "2"}).code == 2);
    REQUIRE(dispatch({"run", "brown", "01", "--seed", "1", "--recipient", "4",
                      "--permitter", "2"}).code == 2);
    REQUIRE(dispatch({"frobnicate"}).code == 2);
  }

  SECTION("text mode invents and prints a seed when none is given") {
    const auto unseeded = dispatch({"run", "cluster", "11"});
    REQUIRE(unseeded.code == 0);
    REQUIRE(unseeded.out.find("seed: ") != std::string::npos);
    REQUIRE(unseeded.out.find("decoded: 11") != std::string::npos);
  }
}

TEST_CASE("audit command", "[cli]") {
  const auto bob = dispatch({"audit", "cluster-bob"});
  REQUIRE(bob.code == 0);
  REQUIRE(bob.out.find("mutual information: 1.000 bits") != std::string::npos);
  REQUIRE(bob.out.find("determined: second message bit") != std::string::npos);

  const auto eve = dispatch({"audit", "cluster-eve"});
  REQUIRE(eve.out.find("determined: parity") != std::string::npos);

  const auto controller = dispatch({"audit", "brown-controller:1"});
  REQUIRE(controller.code == 0);
  REQUIRE(controller.out.find("mutual information: 1.000 bits") !=
          std::string::npos);
  REQUIRE(controller.out.find("max guess probability: 0.5") !=
          std::string::npos);

  REQUIRE(dispatch({"audit", "brown-controller:4"}).code == 2);
  REQUIRE(dispatch({"audit", "nosuchview"}).code == 2);
  REQUIRE(dispatch({"audit", "brown-eve", "--recipient", "2", "--permitter",
                    "2"}).code == 2);
}

TEST_CASE("efficiency and state dump commands", "[cli]") {
  const auto eff = dispatch({"efficiency"});
  REQUIRE(eff.code == 0);
  REQUIRE(eff.out.find("Proposed (cluster)") != std::string::npos);
  REQUIRE(eff.out.find("Proposed (brown)") != std::string::npos);
  REQUIRE(eff.out.find("Dong et al.") != std::string::npos);

  const auto cluster = dispatch({"state", "dump", "cluster"});
  REQUIRE(cluster.code == 0);
  REQUIRE(count_lines_containing(cluster.out, "0.") >= 4);

  const auto brown = dispatch({"state", "dump", "brown", "--format", "json"});
  REQUIRE(brown.code == 0);
  const auto parsed = nlohmann::ordered_json::parse(brown.out);
  REQUIRE(parsed["amplitudes"].size() == 8);

  REQUIRE(dispatch({"state", "dump", "w-state"}).code == 2);
}

TEST_CASE("json output is deterministic and round-trippable", "[cli]") {
  const std::vector<std::vector<std::string>> commands = {
      {"tables", "cluster", "--check", "--format", "json"},
      {"tables", "brown", "--check", "--format", "json"},
      {"run", "cluster", "01", "--seed", "7", "--format", "json"},
      {"run", "brown", "10", "--seed", "7", "--recipient", "1", "--permitter",
       "2", "--format", "json"},
      {"audit", "cluster-bob", "--format", "json"},
      {"audit", "brown-eve", "--format", "json"},
      {"efficiency", "--format", "json"},
      {"state", "dump", "brown", "--format", "json"},
  };
  for (const auto& command : commands) {
    const auto first = dispatch(command);
    const auto second = dispatch(command);
    REQUIRE(first.code == second.code);
    REQUIRE(first.out == second.out);  // byte identical

    const auto parsed = nlohmann::ordered_json::parse(first.out);
    REQUIRE(parsed.dump(2) + "\n" == first.out);
  }
}

TEST_CASE("json schemas are pinned by golden files", "[cli]") {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"tables", "cluster", "--check", "--format", "json"},
       "tables_cluster_check.json"},
      {{"tables", "brown", "--check", "--format", "json"},
       "tables_brown_check.json"},
      {{"run", "cluster", "01", "--seed", "7", "--format", "json"},
       "run_cluster_01_seed7.json"},
      {{"run", "brown", "10", "--seed", "7", "--recipient", "1", "--permitter",
        "2", "--format", "json"},
       "run_brown_10_seed7.json"},
      {{"audit", "cluster-bob", "--format", "json"}, "audit_cluster_bob.json"},
      {{"audit", "cluster-eve", "--format", "json"}, "audit_cluster_eve.json"},
      {{"audit", "brown-controller:1", "--format", "json"},
       "audit_brown_controller1.json"},
      {{"audit", "brown-eve", "--format", "json"}, "audit_brown_eve.json"},
      {{"efficiency", "--format", "json"}, "efficiency.json"},
      {{"state", "dump", "brown", "--format", "json"}, "state_brown.json"},
  };
  for (const auto& [command, golden] : cases) {
    INFO(golden);
    const auto result = dispatch(command);
    REQUIRE(result.out == read_golden(golden));
  }
}
