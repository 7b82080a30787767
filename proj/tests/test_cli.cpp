#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "apseries/cli.hpp"

using namespace aps;

namespace {

/// Run the installed binary and capture stdout+stderr.
std::pair<int, std::string> run_tool(const std::string& args) {
  std::string cmd = std::string(APSERIES_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

JobSpec job(const std::string& command, std::map<std::string, std::string> inputs = {},
            std::vector<std::int64_t> order = {}, std::int64_t trunc = 0,
            std::vector<std::string> vars = {}) {
  JobSpec j;
  j.command = command;
  j.inputs = std::move(inputs);
  j.order_weights = std::move(order);
  j.trunc = trunc;
  j.variables = std::move(vars);
  return j;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("kg command reproduces the closed form") {
  RunResult r = run(job("kg", {{"a", "2"}}, {}, 100));
  CHECK(r.status == 0);
  CHECK(contains(r.output, "s = x^3 - x^6 + x^12 - x^24 + x^48 - x^96"));
  CHECK(contains(r.output, "oracle_match = true"));
  CHECK(contains(r.output, "gap.ratios = 2,2,2,2,2"));
}

TEST_CASE("bounds hermann prints the exact decimal") {
  JobSpec j;
  j.command = "bounds";
  j.args = {"hermann", "2", "3", "2", "5"};
  RunResult r = run(j);
  CHECK(r.status == 0);
  CHECK(contains(r.output, "value = 1301"));
}

TEST_CASE("hilbertmat prints determinant and verdict") {
  JobSpec j;
  j.command = "hilbertmat";
  j.args = {"2"};
  RunResult r = run(j);
  CHECK(r.status == 0);
  CHECK(contains(r.output, "det = -1/12"));
  CHECK(contains(r.output, "nonsingular = true"));
}

TEST_CASE("divide command emits quotients and remainder") {
  RunResult r = run(job("divide", {{"f", "x*y"}, {"g", "(x-y^2)*(y-x^2)"}},
                       {1, 1}, 100, {"x", "y"}));
  CHECK(r.status == 0);
  CHECK(contains(r.output, "leader.1 = x*y"));
  CHECK(contains(r.output, "remainder.ord = 3"));
  CHECK(contains(r.output, "x^96"));
}

TEST_CASE("identical jobs produce byte-identical machine output") {
  JobSpec j = job("zescan", {{"gens", "(x-y^2)*(y-x^2)"}, {"degcap", "4"}, {"samples", "8"},
                             {"D", "20"}},
                  {}, 0, {"x", "y"});
  j.seed = 99;
  RunResult a = run(j);
  RunResult b = run(j);
  CHECK(a.status == 0);
  CHECK(a.output == b.output);
  CHECK(contains(a.output, "seed = 99"));
  // a different seed may change sampled content but never the grammar
  j.seed = 100;
  RunResult c = run(j);
  CHECK(c.status == 0);
  CHECK(contains(c.output, "seed = 100"));
}

TEST_CASE("error categories map to structured output and exit codes") {
  RunResult parse_err = run(job("divide", {{"f", "x +"}, {"g", "x"}}, {1, 1}, 10, {"x", "y"}));
  CHECK(parse_err.status == 2);
  CHECK(contains(parse_err.output, "error.category = parse"));

  RunResult precond = run(job("divide", {{"f", "x"}, {"g", "0"}}, {1, 1}, 10, {"x", "y"}));
  CHECK(precond.status == 3);
  CHECK(contains(precond.output, "error.category = precondition"));

  RunResult unknown = run(job("frobnicate"));
  CHECK(unknown.status == 2);
}

TEST_CASE("member and ord commands agree on the KG membership example") {
  auto inputs = std::map<std::string, std::string>{
      {"f", "x*y - x^3 - y^3"}, {"gens", "(x-y^2)*(y-x^2)"}, {"D", "20"}};
  RunResult o = run(job("ord", inputs, {}, 0, {"x", "y"}));
  CHECK(o.status == 0);
  CHECK(contains(o.output, "ord = 6"));

  inputs["c"] = "6";
  RunResult m = run(job("member", inputs, {}, 0, {"x", "y"}));
  CHECK(m.status == 0);
  CHECK(contains(m.output, "member = true"));
  inputs["c"] = "7";
  RunResult m7 = run(job("member", inputs, {}, 0, {"x", "y"}));
  CHECK(contains(m7.output, "member = false"));
}

TEST_CASE("member command handles rank-2 vector generators") {
  RunResult r = run(job("member",
                        {{"f", "[x^2,x*y]"}, {"gens", "[x,y];[0,x^2-y]"}, {"s", "2"},
                         {"c", "10"}, {"D", "10"}},
                        {}, 0, {"x", "y"}));
  CHECK(r.status == 0);
  CHECK(contains(r.output, "member = true"));
  CHECK(contains(r.output, "a.1 = x"));
}

TEST_CASE("hs command emits the closed-form values") {
  RunResult psi = run(job("hs", {{"kind", "psi"}, {"gens", "x^2;x*y;y^2"}, {"from", "2"},
                                 {"to", "6"}},
                          {}, 0, {"x", "y", "z"}));
  CHECK(psi.status == 0);
  CHECK(contains(psi.output, "psi.2 = 4"));
  CHECK(contains(psi.output, "psi.6 = 16"));
  CHECK(contains(psi.output, "stabilized_difference_order = 1"));

  RunResult phi = run(job("hs", {{"kind", "phi"}, {"from", "0"}, {"to", "5"}}, {}, 0, {"x", "y"}));
  CHECK(phi.status == 0);
  CHECK(contains(phi.output, "phi.2 = 6"));
  CHECK(contains(phi.output, "stabilized_difference_order = 2"));
}

TEST_CASE("wdiv and prep commands run the geometric example") {
  auto w = run(job("wdiv", {{"g", "x2"}, {"f", "(1+x1)*x2-x1"}}, {}, 6, {"x1", "x2"}));
  CHECK(w.status == 0);
  CHECK(contains(w.output, "quotient = 1 - x1 + x1^2 - x1^3 + x1^4 - x1^5"));
  auto p = run(job("prep", {{"f", "(1+x1)*x2-x1"}}, {}, 6, {"x1", "x2"}));
  CHECK(p.status == 0);
  CHECK(contains(p.output, "unit = 1 + x1"));
}

TEST_CASE("lift command prints the binomial jet") {
  auto r = run(job("lift", {{"P", "T^2 - (1 + x)"}, {"c0", "1"}}, {}, 5, {"x"}));
  CHECK(r.status == 0);
  CHECK(contains(r.output, "jet = 1 + 1/2*x - 1/8*x^2 + 1/16*x^3 - 5/128*x^4"));
  CHECK(contains(r.output, "certificate = 5"));
}

TEST_CASE("kg-generic command prints matched closed-form coefficients") {
  auto r = run(job("kg-generic", {{"k", "2"}}, {}, 30));
  CHECK(r.status == 0);
  CHECK(contains(r.output, "coefficients_match = true"));
  CHECK(contains(r.output, "r.6 = (-a^3*b)"));
}

TEST_CASE("gaps command applies the hadamard test") {
  auto r = run(job("gaps", {{"poly", "x^3 - x^6 + x^12"}, {"C", "3/2"}}, {}, 20, {"x"}));
  CHECK(r.status == 0);
  CHECK(contains(r.output, "gap.degrees = 3,6,12"));
  CHECK(contains(r.output, "hadamard = true"));
}

TEST_CASE("annihilate command: sum of sqrt(1+x) and x") {
  auto r = run(job("annihilate", {{"op", "sum"}, {"P", "T^2 - (1 + x)"}, {"Q", "T - x"}},
                   {}, 0, {"x"}));
  CHECK(r.status == 0);
  CHECK(contains(r.output, "height = 2"));
  CHECK(contains(r.output, "degree = 2"));
}

TEST_CASE("job files parse into equivalent jobs") {
  std::string file =
      "# KG division job\n"
      "command = divide\n"
      "vars = x,y\n"
      "order = 1,1\n"
      "trunc = 100\n"
      "f = x*y\n"
      "g = (x-y^2)*(y-x^2)\n";
  JobSpec j = parse_job_file(file);
  CHECK(j.command == "divide");
  CHECK(j.trunc == 100);
  RunResult direct = run(job("divide", {{"f", "x*y"}, {"g", "(x-y^2)*(y-x^2)"}},
                             {1, 1}, 100, {"x", "y"}));
  CHECK(run(j).output == direct.output);
}

TEST_CASE("default truncation is 64 when unset") {
  CHECK((default_trunc() == 64 || std::getenv("APSERIES_TRUNC") != nullptr));
  RunResult r = run(job("kg", {{"a", "2"}}));
  CHECK(r.status == 0);
  CHECK(contains(r.output, "x^48"));
  CHECK_FALSE(contains(r.output, "x^96"));  // 96 >= 64 is cut
}

TEST_CASE("duplicate variable names are rejected") {
  RunResult r = run(job("divide", {{"f", "x"}, {"g", "x"}}, {1, 1}, 10, {"x", "x"}));
  CHECK(r.status == 3);
}

TEST_CASE("binary end-to-end: flags match the in-process runner") {
  auto [status, out] = run_tool("kg --a 2 --trunc 100");
  CHECK(status == 0);
  RunResult direct = run(job("kg", {{"a", "2"}}, {}, 100));
  CHECK(out == direct.output);

  auto [dstatus, dout] =
      run_tool("divide --order 1,1 --trunc 100 --f \"x*y\" --g \"(x-y^2)*(y-x^2)\" --vars x,y");
  CHECK(dstatus == 0);
  CHECK(contains(dout, "x^96"));

  auto [bstatus, bout] = run_tool("bounds hermann 2 3 2 5");
  CHECK(bstatus == 0);
  CHECK(contains(bout, "value = 1301"));

  auto [estatus, eout] = run_tool("divide --f \"x +\" --g \"x\" --vars x,y --order 1,1");
  CHECK(estatus == 2);
  CHECK(contains(eout, "error.category = parse"));
}

TEST_CASE("binary end-to-end: job files and gap input files") {
  std::string dir = std::filesystem::temp_directory_path().string();
  std::string jobpath = dir + "/apseries_test.job";
  {
    std::ofstream f(jobpath);
    f << "command = kg\na = 2\ntrunc = 100\n";
  }
  auto [status, out] = run_tool("job " + jobpath);
  CHECK(status == 0);
  CHECK(contains(out, "oracle_match = true"));

  std::string polypath = dir + "/apseries_remainder.txt";
  {
    std::ofstream f(polypath);
    f << "x^3 - x^6 + x^12 - x^24\n";
  }
  auto [gstatus, gout] = run_tool("gaps --input " + polypath + " --C 3/2 --vars x --trunc 30");
  CHECK(gstatus == 0);
  CHECK(contains(gout, "gap.degrees = 3,6,12,24"));
  CHECK(contains(gout, "hadamard = true"));
  std::remove(jobpath.c_str());
  std::remove(polypath.c_str());
}
