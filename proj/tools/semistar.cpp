#include "semistar/claims.hpp"
#include "semistar/script.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace semistar;

namespace {

constexpr int kUsageError = 64;

Budget default_budget() {
  const char* p = std::getenv("SEMISTAR_PROFILE");
  return budget_profile(p ? p : "");
}

int write_report(const std::vector<ClaimResult>& results, const std::string& json_path) {
  std::cout << report_table(results);
  if (!json_path.empty()) {
    std::ofstream os(json_path);
    if (!os) {
      std::cerr << "semistar: cannot write " << json_path << "\n";
      return kUsageError;
    }
    os << report_json(results);
  }
  return exit_code(results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact semistar operations and theorem replay"};
  app.require_subcommand(1);

  Budget budget;
  try {
    budget = default_budget();
  } catch (const std::exception& e) {
    std::cerr << "semistar: " << e.what() << "\n";
    return kUsageError;
  }

  std::string script_path, json_path, claim;
  std::vector<std::string> domains;
  int samples = -1;
  unsigned threads = 0;

  auto* eval = app.add_subcommand("eval", "run a script");
  eval->add_option("script", script_path, "script file, or - for stdin")->required();
  eval->add_option("--json", json_path, "write check results as JSON");

  auto* check = app.add_subcommand("check", "replay a claim suite");
  check->add_option("claim", claim, "claim id or 'all'")->required();
  check->add_option("--domain", domains, "keep only these domains (e.g. Z, 'Z[sqrt(-3)]')");
  for (auto* sub : {eval, check}) {
    sub->add_option("--slice", budget.slice, "highest slice degree")->check(CLI::Range(0, 12));
    sub->add_option("--mult-cap", budget.mult_cap, "multiplier degree cap")->check(CLI::Range(0, 12));
    sub->add_option("--witness-deg", budget.witness_deg, "witness numerator degree")->check(CLI::Range(0, 12));
    sub->add_option("--prime-norm", budget.prime_norm, "prime pool norm bound")->check(CLI::Range(2, 1000));
    sub->add_option("--seed", budget.seed, "seed for randomized corpora");
  }
  check->add_option("--samples", samples, "override randomized sample counts");
  check->add_option("--threads", threads, "worker threads (0 = hardware)");
  check->add_option("--json", json_path, "write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      if (claim != "all" && !is_claim_id(claim)) {
        std::cerr << "semistar: unknown claim id '" << claim << "'; known:";
        for (const auto& id : claim_ids()) std::cerr << " " << id;
        std::cerr << "\n";
        return kUsageError;
      }
      for (const auto& d : domains) domain_from_label(d);
      SuiteConfig cfg;
      cfg.budget = budget;
      cfg.domains = domains;
      cfg.samples = samples;
      cfg.threads = threads;
      return write_report(run_suite(claim, cfg), json_path);
    }

    std::string text;
    if (script_path == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      text = ss.str();
    } else {
      std::ifstream in(script_path);
      if (!in) {
        std::cerr << "semistar: cannot read " << script_path << "\n";
        return kUsageError;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    Script s;
    try {
      s = Script::parse(text);
      analyze(s);
    } catch (const ParseError& e) {
      std::cerr << script_path << ":" << e.what() << "\n";
      return kUsageError;
    }
    SuiteConfig cfg;
    cfg.budget = budget;
    auto checks = run_script(s, std::cout, cfg);
    if (!json_path.empty()) {
      std::ofstream os(json_path);
      os << report_json(checks);
    }
    return checks.empty() ? 0 : exit_code(checks);
  } catch (const ParseError& e) {
    std::cerr << script_path << ":" << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "semistar: " << e.what() << "\n";
    return kUsageError;
  }
}
