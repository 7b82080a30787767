// apseries: exact division, bounds and zero-estimate tool for algebraic power
// series. See README.md for the polynomial grammar and command reference.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "apseries/cli.hpp"

namespace {

struct CommonFlags {
  std::string vars;
  std::string order;
  long long trunc = 0;
  long long seed = -1;
  std::string format = "machine";
};

void add_common(CLI::App* cmd, CommonFlags& cf) {
  cmd->add_option("--vars", cf.vars, "comma-separated variable names");
  cmd->add_option("--order", cf.order, "comma-separated positive weights");
  cmd->add_option("--trunc", cf.trunc, "truncation weight");
  cmd->add_option("--seed", cf.seed, "RNG seed for sampled scans");
  cmd->add_option("--format", cf.format, "machine|human");
}

void fill_common(aps::JobSpec& job, const CommonFlags& cf) {
  if (!cf.vars.empty())
    for (const auto& v : aps::cli_detail::split(cf.vars, ',')) job.variables.push_back(v);
  if (!cf.order.empty())
    for (const auto& w : aps::cli_detail::split(cf.order, ','))
      job.order_weights.push_back(aps::cli_detail::to_int(w, "order weight"));
  job.trunc = cf.trunc;
  if (cf.seed >= 0) job.seed = static_cast<std::uint64_t>(cf.seed);
  job.machine = cf.format != "human";
}

int run_and_print(const aps::JobSpec& job) {
  aps::RunResult r = aps::run(job);
  std::fputs(r.output.c_str(), r.status == 0 ? stdout : stderr);
  return r.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact division and zero-estimate toolkit for algebraic power series"};
  app.require_subcommand(1);

  aps::JobSpec job;
  CommonFlags cf;

  std::map<std::string, std::string> optvals;  // node-stable storage for CLI11 bindings
  auto bind = [&](CLI::App* cmd, const std::string& key, const std::string& help,
                  bool required = false) {
    auto* o = cmd->add_option("--" + key, optvals[key], help);
    if (required) o->required();
  };

  auto* divide = app.add_subcommand("divide", "Grauert-Hironaka-Galligo division");
  add_common(divide, cf);
  bind(divide, "f", "dividend polynomial", true);
  bind(divide, "g", "divisors, ';'-separated", true);

  auto* wdiv = app.add_subcommand("wdiv", "Weierstrass division of g by f");
  add_common(wdiv, cf);
  bind(wdiv, "g", "dividend polynomial", true);
  bind(wdiv, "f", "divisor, regular on the axis", true);
  bind(wdiv, "axis", "distinguished variable (default: last)");

  auto* prep = app.add_subcommand("prep", "Weierstrass preparation");
  add_common(prep, cf);
  bind(prep, "f", "series to prepare", true);
  bind(prep, "axis", "distinguished variable (default: last)");

  auto* lift = app.add_subcommand("lift", "Newton-Hensel lifting of a simple root");
  add_common(lift, cf);
  bind(lift, "P", "annihilating polynomial in declared vars plus T", true);
  bind(lift, "c0", "root of P(0,T)");

  auto* ann = app.add_subcommand("annihilate", "resultant-based annihilator constructions");
  add_common(ann, cf);
  bind(ann, "op", "sum|product|compose|derivative", true);
  bind(ann, "P", "first annihilator", true);
  bind(ann, "Q", "second annihilator (sum/product/compose)");
  bind(ann, "c0", "lifting root for derivative");
  bind(ann, "axis", "derivative axis");

  auto* bounds = app.add_subcommand("bounds", "certified bound calculus");
  bounds->add_option("--format", cf.format, "machine|human");
  std::vector<std::string> bargs;
  bounds->add_option("name_and_args", bargs, "formula name and natural arguments")->expected(-1);

  auto* member = app.add_subcommand("member", "truncated ideal/submodule membership");
  add_common(member, cf);
  bind(member, "f", "candidate element", true);
  bind(member, "gens", "generators, ';'-separated; vectors as [p,q]", true);
  bind(member, "c", "order threshold");
  bind(member, "D", "truncation degree");
  bind(member, "s", "module rank");

  auto* ord = app.add_subcommand("ord", "order in the quotient module");
  add_common(ord, cf);
  bind(ord, "f", "element", true);
  bind(ord, "gens", "generators (may be empty)");
  bind(ord, "D", "truncation degree");
  bind(ord, "s", "module rank");

  auto* hs = app.add_subcommand("hs", "Hilbert-Samuel functions");
  add_common(hs, cf);
  bind(hs, "kind", "phi|psi");
  bind(hs, "gens", "ideal generators, ';'-separated");
  bind(hs, "from", "first degree");
  bind(hs, "to", "last degree");

  auto* zescan = app.add_subcommand("zescan", "zero-estimate scan over monomials and samples");
  add_common(zescan, cf);
  bind(zescan, "gens", "ideal generators", true);
  bind(zescan, "degcap", "degree cap for scanned polynomials");
  bind(zescan, "D", "truncation degree");
  bind(zescan, "samples", "number of random polynomials");

  auto* hmat = app.add_subcommand("hilbertmat", "Hilbert-type matrix determinant");
  hmat->add_option("--format", cf.format, "machine|human");
  std::string hmat_d;
  hmat->add_option("d", hmat_d, "matrix dimension")->required();

  auto* gaps = app.add_subcommand("gaps", "gap analysis of a series");
  add_common(gaps, cf);
  bind(gaps, "poly", "series body as polynomial text");
  bind(gaps, "input", "file containing the series body");
  bind(gaps, "C", "Hadamard constant (rational > 1)");

  auto* kg = app.add_subcommand("kg", "Kashiwara-Gabber division and closed form");
  add_common(kg, cf);
  bind(kg, "a", "KG parameter a >= 2");

  auto* kgg = app.add_subcommand("kg-generic", "generic KG division over Q(a,b)");
  add_common(kgg, cf);
  bind(kgg, "k", "KG parameter k >= 2");

  auto* jobcmd = app.add_subcommand("job", "run a declarative job file");
  std::string jobfile;
  jobcmd->add_option("file", jobfile, "job file path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (sub == jobcmd) {
      std::ifstream in(jobfile);
      if (!in) {
        std::fprintf(stderr, "error.category = parse\nerror.message = cannot open %s\n",
                     jobfile.c_str());
        return 2;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      return run_and_print(aps::parse_job_file(ss.str()));
    }
    job.command = sub->get_name();
    fill_common(job, cf);
    if (sub == bounds) {
      job.args = bargs;
      job.machine = cf.format != "human";
    }
    if (sub == hmat) {
      job.args = {hmat_d};
      job.machine = cf.format != "human";
    }
    for (const auto& [key, value] : optvals)
      if (!value.empty()) job.inputs[key] = value;
    if (job.command == "gaps" && !job.inputs.count("poly") && job.inputs.count("input")) {
      std::ifstream in(job.inputs["input"]);
      if (!in) {
        std::fprintf(stderr, "error.category = parse\nerror.message = cannot open %s\n",
                     job.inputs["input"].c_str());
        return 2;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      std::string body = ss.str();
      while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
      job.inputs["poly"] = body;
    }
    return run_and_print(job);
  } catch (const aps::error& e) {
    std::fprintf(stderr, "error.message = %s\n", e.what());
    return 2;
  }
}
