#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "pse/addand.hpp"
#include "pse/formula.hpp"
#include "support.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

int next_id() {
  static int id = 0;
  return id++;
}

CliResult run_cli(const std::string& args, const std::string& stdin_data = "") {
  int id = next_id();
  std::string in_path = "cli_in_" + std::to_string(id) + ".txt";
  std::string out_path = "cli_out_" + std::to_string(id) + ".txt";
  {
    std::ofstream in(in_path);
    in << stdin_data;
  }
  std::string cmd = std::string(PSE_BIN) + " " + args + " < " + in_path +
                    " > " + out_path + " 2>&1";
  int rc = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream out(out_path);
  std::stringstream buf;
  buf << out.rdbuf();
  r.out = buf.str();
  std::remove(in_path.c_str());
  std::remove(out_path.c_str());
  return r;
}

std::string write_temp(const std::string& content) {
  std::string path = "cli_formula_" + std::to_string(next_id()) + ".cnf";
  std::ofstream f(path);
  f << content;
  return path;
}

std::string example_text() {
  return pse::serialize_dimacs(testsupport::example_circuit());
}

}  // namespace

TEST_CASE("cli computes entropy from a file and from stdin") {
  std::string path = write_temp(example_text());
  CliResult from_file = run_cli(path);
  CHECK(from_file.exit_code == 0);
  CHECK(from_file.out.find("entropy 2.84237099") != std::string::npos);
  CHECK(from_file.out.find("count 28") != std::string::npos);

  CliResult from_stdin = run_cli("-", example_text());
  CHECK(from_stdin.exit_code == 0);
  CHECK(from_stdin.out == from_file.out);
  std::remove(path.c_str());
}

TEST_CASE("cli json statistics are machine readable") {
  CliResult r = run_cli("--mode pse --stats json -", example_text());
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == "28");
  CHECK(j["entropy"].get<double>() == doctest::Approx(2.8423709931771086));
  CHECK(j.contains("stats"));
  CHECK(j["stats"]["y_decisions"].get<int>() > 0);
}

TEST_CASE("cli verify cross-checks against the conditioning baseline") {
  CliResult r = run_cli("--mode verify -", example_text());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("agree true") != std::string::npos);
}

TEST_CASE("cli baseline mode reports the same numbers") {
  CliResult r = run_cli("--mode baseline -", example_text());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("count 28") != std::string::npos);
  CHECK(r.out.find("entropy 2.84237099") != std::string::npos);
}

TEST_CASE("cli check accepts circuits and rejects non-circuits") {
  CliResult good = run_cli("--mode check -", example_text());
  CHECK(good.exit_code == 0);
  CHECK(good.out.find("circuit true") != std::string::npos);

  CliResult bad = run_cli("--mode check -",
                          "p cnf 2 1\n"
                          "c p input 1 0\n"
                          "c p output 2 0\n"
                          "1 2 0\n");
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.find("circuit false") != std::string::npos);
}

TEST_CASE("cli compile writes a loadable diagram") {
  std::string diagram = "cli_diagram_" + std::to_string(next_id()) + ".txt";
  CliResult r = run_cli("--mode compile --no-pre --order 6,7,8,9,10 --out " +
                            diagram + " -",
                        example_text());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("nodes 14") != std::string::npos);
  std::ifstream in(diagram);
  REQUIRE(in.good());
  pse::AddAnd d = pse::read_diagram(in);
  CHECK(d.size() == 14);
  CHECK(d.weight() == 28);
  std::remove(diagram.c_str());
}

TEST_CASE("cli compile emits graphviz") {
  CliResult r = run_cli("--mode compile --format dot -", example_text());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("digraph") != std::string::npos);
}

TEST_CASE("cli gen writes a manifest and reproducible files") {
  std::string dir = "cli_gen_" + std::to_string(next_id());
  CliResult r = run_cli("--mode gen --seed 7 --count 3 --inputs 5 --outputs 3 "
                        "--out-dir " +
                        dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("generated 3") != std::string::npos);

  std::ifstream m(dir + "/manifest.json");
  REQUIRE(m.good());
  auto manifest = nlohmann::json::parse(m);
  REQUIRE(manifest["files"].size() == 3);
  CHECK(manifest["files"][0]["seed"] == 7);
  CHECK(manifest["files"][2]["seed"] == 9);

  std::ifstream first(dir + "/" + manifest["files"][0]["file"].get<std::string>());
  REQUIRE(first.good());
  pse::CircuitFormula f = pse::parse_dimacs(
      std::string(std::istreambuf_iterator<char>(first), {}));
  CHECK(f.inputs.size() == 5);
  CHECK(f.outputs.size() == 3);

  CliResult single = run_cli("--mode gen --seed 7 --inputs 5 --outputs 3");
  CHECK(single.exit_code == 0);
  pse::CircuitFormula g = pse::parse_dimacs(single.out);
  CHECK(pse::serialize_dimacs(g) == pse::serialize_dimacs(f));

  std::string cleanup = "rm -rf " + dir;
  CHECK(std::system(cleanup.c_str()) == 0);
}

TEST_CASE("cli maps failures onto distinct exit codes") {
  CliResult parse_err = run_cli("-", "p cnf broken\n");
  CHECK(parse_err.exit_code == 1);

  CliResult missing = run_cli("no_such_file.cnf");
  CHECK(missing.exit_code == 1);

  CliResult violation = run_cli("-",
                                "p cnf 2 1\n"
                                "c p output 1 2 0\n"
                                "1 0\n");
  CHECK(violation.exit_code == 2);
  CHECK(violation.out.find("circuit violation") != std::string::npos);

  std::string big = pse::serialize_dimacs(testsupport::separable_formula(8));
  CliResult timeout = run_cli("--timeout 0.000000001 -", big);
  CHECK(timeout.exit_code == 3);

  CliResult bad_flag = run_cli("--mode nonsense -", example_text());
  CHECK(bad_flag.exit_code != 0);
}
