#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the installed command-line binary; the path comes in
// via a compile definition from CMake.

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_cli(const std::string& args) {
  const std::string command = std::string(MPSFFT_CLI_PATH) + " " + args +
                              " 2>/dev/null";
  std::array<char, 4096> buffer{};
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/mpsfft_test_") + name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    out << line << "\n";
  }
  return out.str();
}

}  // namespace

TEST_CASE("count prints exact values") {
  CHECK(run_cli("count --n 6").output == "2598061\n");
  CHECK(run_cli("count --n 1").output == "2\n");
  CHECK(run_cli("count --n 7 --scientific").output == "3.3750E+12\n");
  const auto full = run_cli("count --n 10");
  CHECK(full.output.size() == 100);  // 99 digits plus the newline
}

TEST_CASE("enumerate emits one allocation per line") {
  const auto result = run_cli("enumerate --n 2");
  CHECK(result.exit_code == 0);
  CHECK(result.output ==
        "{\"n\":2,\"sizes\":[4]}\n"
        "{\"n\":2,\"sizes\":[2,2]}\n"
        "{\"n\":2,\"sizes\":[2,1,1]}\n"
        "{\"n\":2,\"sizes\":[1,1,1,1]}\n");
  CHECK(run_cli("enumerate --n 8").exit_code == 1);  // guarded
}

TEST_CASE("schedule and bound pipeline") {
  const std::string alloc_path = temp_path("cascade.json");
  write_file(alloc_path, R"({"n":5,"sizes":[16,8,4,2,1,1]})");

  const auto sched = run_cli("schedule --alloc " + alloc_path + " --M 5");
  CHECK(sched.exit_code == 0);
  CHECK(sched.output.find("\"T\":8") != std::string::npos);

  const auto bound = run_cli("bound --alloc " + alloc_path + " --M 5");
  CHECK(bound.exit_code == 0);
  CHECK(bound.output.find("\"T_lower\":8") != std::string::npos);

  const auto graph = run_cli("graph --alloc " + alloc_path);
  CHECK(graph.exit_code == 0);
  CHECK(graph.output.find("\"n\":5") != std::string::npos);
}

TEST_CASE("verify passes on a generated schedule and fails on a corrupt one") {
  const std::string alloc_path = temp_path("verify.json");
  write_file(alloc_path, R"({"n":4,"sizes":[4,2,2,1,1,1,1,1,1,1,1]})");

  const auto ok = run_cli("verify --alloc " + alloc_path + " --M 3 --seed 7");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("verdict: PASS") != std::string::npos);

  // Full-band allocation: empty graph, trivially verified.
  const std::string full_path = temp_path("fullband.json");
  write_file(full_path, R"({"n":5,"sizes":[32]})");
  const auto empty = run_cli("verify --alloc " + full_path + " --M 4");
  CHECK(empty.exit_code == 0);
  CHECK(empty.output.find("T=0") != std::string::npos);
  CHECK(empty.output.find("verdict: PASS") != std::string::npos);

  // Corrupt schedule: swap two slots so a child runs before its parents.
  const std::string sched_path = temp_path("bad_schedule.json");
  write_file(sched_path,
             R"({"M":3,"T":2,"slots":[[[3,4]],[[0,0],[0,1],[0,2]]]})");
  const auto bad = run_cli("verify --alloc " + alloc_path + " --M 3 " +
                           "--schedule " + sched_path);
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("feasible=no") != std::string::npos);
  CHECK(bad.output.find("verdict: FAIL") != std::string::npos);
}

TEST_CASE("experiment output is deterministic modulo the timestamp") {
  const std::string out_a = temp_path("exp_a.csv");
  const std::string out_b = temp_path("exp_b.csv");
  const std::string base = "experiment --n 4 --policy all --mode complete ";
  CHECK(run_cli(base + "--out " + out_a + " --workers 1").exit_code == 0);
  CHECK(run_cli(base + "--out " + out_b + " --workers 2").exit_code == 0);
  std::ifstream a(out_a), b(out_b);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(strip_comments(sa.str()) == strip_comments(sb.str()));
  CHECK(sa.str().rfind("# generated", 0) == 0);
}

TEST_CASE("experiment summary csv") {
  const std::string summary = temp_path("summary.csv");
  const auto r = run_cli(
      "experiment --n 3 --policy pow2 --mode complete --summary " + summary);
  CHECK(r.exit_code == 0);
  std::ifstream in(summary);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() ==
        "n,M_policy,eta,eta_lower,gamma,gamma_low,gamma_high,xi0,xi1,alpha\n"
        "3,powers-of-two,1,,0,,,33,33,0.95\n");
  // The report JSON lands on stdout.
  CHECK(r.output.find("\"eta\":1.0") != std::string::npos);
}

TEST_CASE("experiment rejects bad configurations with exit code 1") {
  CHECK(run_cli("experiment --n 7 --mode complete").exit_code == 1);
  CHECK(run_cli("experiment --n 5 --mode sampled").exit_code == 1);
  CHECK(run_cli("schedule --alloc /nonexistent.json --M 2").exit_code == 1);
  const std::string bad_alloc = temp_path("bad_alloc.json");
  write_file(bad_alloc, R"({"n":3,"sizes":[4,3,1]})");
  CHECK(run_cli("schedule --alloc " + bad_alloc + " --M 2").exit_code == 1);
}

TEST_CASE("baseline and benchmark tables") {
  const auto base = run_cli("baseline --n 5");
  CHECK(base.output ==
        "n,scheme,processors,slots\n5,serial,1,80\n5,pipelined,5,35\n");

  const auto bench = run_cli("benchmark --n-min 3 --n-max 3");
  CHECK(bench.exit_code == 0);
  CHECK(bench.output.find("3,12,9,8.5000,3.7000") != std::string::npos);
}
