#pragma once

#include "semistar/extension.hpp"

#include <optional>
#include <string>
#include <vector>

namespace semistar {

enum class Status { Confirmed, Inconclusive, Refuted, Informational };
std::string to_string(Status s);

struct ClaimResult {
  std::string claim;
  std::string instance;
  Status status = Status::Confirmed;
  std::optional<std::string> witness;
  BudgetRecord budgets;
  double ms = 0;
};

struct SuiteConfig {
  Budget budget;
  // Domain labels to keep; empty keeps every domain a suite uses.
  std::vector<std::string> domains;
  // Randomized sample count override; negative uses the suite default.
  int samples = -1;
  // Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

std::vector<std::string> claim_ids();
bool is_claim_id(const std::string& id);
// `id` is a claim id or "all". Results are ordered by claim id, then instance.
std::vector<ClaimResult> run_suite(const std::string& id, const SuiteConfig& cfg);

// Report label of a domain ("Z", "Z[sqrt(-3)]", ...).
std::string domain_label(const DomainPtr& d);
DomainPtr domain_from_label(const std::string& label);

std::string report_json(const std::vector<ClaimResult>& results, bool with_timing = true);
std::string report_table(const std::vector<ClaimResult>& results);
// 0 all confirmed, 1 any refuted, 2 any inconclusive, 3 nothing ran.
int exit_code(const std::vector<ClaimResult>& results);

// Budget defaults, optionally overridden by a named profile ("quick", "default", "thorough").
Budget budget_profile(const std::string& name);

}  // namespace semistar
