// Runs `semistar check all` twice and grades the report against the acceptance criteria.
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#ifndef SEMISTAR_CLI
#error "SEMISTAR_CLI must name the semistar executable"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr double kMaxWallSeconds = 600.0;
constexpr int kSeed = 7;

struct Run {
  int status = -1;
  double seconds = 0;
  json report;
};

Run run_cli(const fs::path& out) {
  const std::string cmd = std::string("\"") + SEMISTAR_CLI + "\" check all --seed " + std::to_string(kSeed) + " --json \"" +
                          out.string() + "\" > \"" + out.string() + ".txt\" 2>&1";
  auto start = std::chrono::steady_clock::now();
  Run r;
  const int raw = std::system(cmd.c_str());
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out);
  if (in) r.report = json::parse(in, nullptr, false);
  return r;
}

std::vector<json> entries(const json& report, const std::string& claim) {
  std::vector<json> out;
  if (!report.is_array()) return out;
  for (const auto& r : report)
    if (r.value("claim", "") == claim) out.push_back(r);
  return out;
}

long budget_int(const json& r, const std::string& key) {
  if (!r.contains("budgets") || !r["budgets"].contains(key)) return -1;
  return std::stol(r["budgets"][key].get<std::string>());
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

// Every entry confirmed, at least `count` of them, and each passing `extra`.
std::string grade(const json& report, const std::string& claim, std::size_t count,
                  const std::function<std::string(const json&)>& extra = nullptr) {
  auto es = entries(report, claim);
  if (es.size() < count)
    return claim + ": " + std::to_string(es.size()) + " instances, expected " + std::to_string(count);
  for (const auto& e : es) {
    if (e["status"] != "confirmed")
      return claim + " / " + e["instance"].get<std::string>() + ": " + e["status"].get<std::string>() +
             (e["witness"].is_null() ? "" : " (witness " + e["witness"].get<std::string>() + ")");
    if (extra) {
      std::string why = extra(e);
      if (!why.empty()) return claim + " / " + e["instance"].get<std::string>() + ": " + why;
    }
  }
  return "";
}

std::function<std::string(const json&)> at_least(const std::string& key, long v) {
  return [key, v](const json& e) -> std::string {
    const long got = budget_int(e, key);
    if (got < v) return key + " = " + std::to_string(got) + " < " + std::to_string(v);
    return "";
  };
}

std::function<std::string(const json&)> all_of(std::vector<std::function<std::string(const json&)>> fs) {
  return [fs](const json& e) -> std::string {
    for (const auto& f : fs) {
      std::string why = f(e);
      if (!why.empty()) return why;
    }
    return "";
  };
}

std::string instances_named(const json& report, const std::string& claim, const std::vector<std::string>& parts) {
  for (const auto& p : parts) {
    bool found = false;
    for (const auto& e : entries(report, claim)) found = found || contains(e["instance"].get<std::string>(), p);
    if (!found) return claim + ": no instance mentioning '" + p + "'";
  }
  return "";
}

json strip_ms(json report) {
  if (report.is_array())
    for (auto& r : report) r.erase("ms");
  return report;
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / ("semistar_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  Run first = run_cli(dir / "first.json");
  Run second = run_cli(dir / "second.json");
  const json& rep = first.report;

  int failures = 0;
  auto report = [&](int n, const std::string& what, const std::string& why) {
    if (why.empty()) {
      std::cout << "PASS criterion " << n << ": " << what << "\n";
    } else {
      ++failures;
      std::cout << "FAIL criterion " << n << ": " << what << " -- " << why << "\n";
    }
  };

  if (!rep.is_array()) {
    std::cout << "FAIL: no JSON report from " << SEMISTAR_CLI << " (exit " << first.status << ")\n";
    return 1;
  }

  report(1, "closure axioms for 9 ops over 3 domains, >= 200 ideals each",
         grade(rep, "axioms", 27, at_least("samples", 200)));

  report(2, "divisorial facts over Z[sqrt(-3)] with bounded search (den <= 4, coords <= 4)",
         grade(rep, "divisorial", 1, all_of({at_least("search_den", 4), at_least("search_coord", 4)})));

  {
    std::string why = grade(rep, "thm2.1-claim1", 6,
                            all_of({at_least("samples", 20), at_least("slice", 5), at_least("witness_deg", 4)}));
    if (why.empty()) why = instances_named(rep, "thm2.1-claim1", {"tri(d)", "tri(v)", "tri(spectral(P2))"});
    report(3, "tri of E[X] closes to E^op[X] on slices 0-5 for d, v, spectral", why);
  }

  report(4, "(2, X) over Z[sqrt(-3)]: tri closes to D[X], A itself differs from D[X]",
         grade(rep, "rem2.6c", 1, at_least("slice", 5)));

  report(5, "50 probes in X^-m D[X], m <= 3: no tri upper bound escapes",
         grade(rep, "prop2.4", 2, all_of({at_least("probes", 50), at_least("m", 3)})));

  {
    std::string why = grade(rep, "thm3.5", 12, [](const json& e) -> std::string {
      const std::string inst = e["instance"].get<std::string>();
      if (contains(inst, "intersections") && budget_int(e, "pairs") < 50) return "fewer than 50 pairs";
      if (contains(inst, "nagata") && budget_int(e, "instances") < 20) return "fewer than 20 instances";
      if (contains(inst, "strict") && budget_int(e, "samples") < 20) return "fewer than 20 samples";
      return "";
    });
    if (why.empty())
      why = instances_named(rep, "thm3.5", {"{P2} over Z", "{P2,P5} over Z", "{P2} over Z[sqrt(-3)]", "{P2,P5} over Z[sqrt(-3)]"});
    report(6, "stable extension: strict, stable on 50 pairs, below nagata below tri on 20 instances", why);
  }

  {
    std::string why = grade(rep, "prop3.8", 1);
    if (why.empty()) {
      why = "no instance over Z";
      for (const auto& e : entries(rep, "prop3.8")) {
        if (!contains(e["instance"].get<std::string>(), "over Z") || contains(e["instance"].get<std::string>(), "sqrt"))
          continue;
        const auto& b = e["budgets"];
        if (b.value("upper(X^2 + 1)", "") != "in") why = "upper(X^2 + 1) not tagged in";
        else if (b.value("(P2, X)", "") != "out (certified)") why = "(P2, X) not a certified exclusion";
        else why = "";
      }
    }
    report(7, "QMax of Z[X] for d: upper(X^2+1) in, (2, X) out with closed bracket", why);
  }

  {
    std::string why = grade(rep, "lem4.6", 5);
    if (why.empty())
      for (const auto& e : entries(rep, "lem4.6")) {
        const std::string inst = e["instance"].get<std::string>();
        if ((contains(inst, "Dedekind") || contains(inst, "power sums")) && budget_int(e, "samples") < 100)
          why = inst + ": fewer than 100 samples";
      }
    if (why.empty())
      why = instances_named(rep, "lem4.6", {"Dedekind-Mertens on random pairs over Z[", "power sums on random H over Z[",
                                            "Dedekind-Mertens on random pairs over Z", "power sums on random H over Z"});
    report(8, "content power sums and Dedekind-Mertens on 100 instances over both domains", why);
  }

  {
    std::string why = grade(rep, "cor4.8", 3);
    if (why.empty())
      for (const auto& e : entries(rep, "cor4.8")) {
        const std::string inst = e["instance"].get<std::string>();
        const std::string cert = e["budgets"].value("certificate", "");
        if (contains(inst, "(2, X)") && !(contains(cert, "not integral: gauss(p-adic(p=2") && contains(cert, ", t=1)")))
          why = "certificate for 1 is '" + cert + "'";
        if (contains(inst, "(4, X^2)") && cert.rfind("integral:", 0) != 0)
          why = "certificate for 2X is '" + cert + "'";
      }
    report(9, "b separations over Z: (2, X) and (4, X^2)", why);
  }

  report(10, "strict family separates op_1 < op_2 < op_3; chain holds on 20 samples",
         grade(rep, "prop2.8", 3, [](const json& e) -> std::string {
           if (contains(e["instance"].get<std::string>(), "samples") && budget_int(e, "samples") < 20)
             return "fewer than 20 samples";
           return "";
         }));

  report(11, "eab(d) reaches E*O over Z[sqrt(-3)] and is the identity over Z",
         grade(rep, "rem5.7a", 2, all_of({at_least("samples", 20), at_least("prime_norm", 30)})));

  {
    std::string why;
    if (!second.report.is_array()) why = "second run produced no report";
    else if (strip_ms(first.report).dump() != strip_ms(second.report).dump()) why = "reports differ outside the ms field";
    else if (first.seconds > kMaxWallSeconds)
      why = "wall time " + std::to_string(first.seconds) + " s > " + std::to_string(kMaxWallSeconds) + " s";
    std::ostringstream what;
    what << "check all --seed " << kSeed << " twice: identical JSON, wall time " << std::fixed;
    what.precision(1);
    what << first.seconds << " s and " << second.seconds << " s (limit " << kMaxWallSeconds << " s)";
    report(12, what.str(), why);
  }

  fs::remove_all(dir);
  return failures ? 1 : 0;
}
