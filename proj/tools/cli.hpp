#pragma once

// The twc command line: classify, orbit, census, verify and explore.

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "twc/context.hpp"

namespace twc::cli {

enum ExitCode : int { kPass = 0, kVerifyFailed = 1, kUsage = 2, kGuardrail = 3 };

enum class Verdict { Pass, Fail, NotApplicable, Info };
std::string to_string(Verdict v);

/// One checked claim of the verify report.
struct ClaimReport {
  std::uint32_t q = 0;
  std::string id;
  std::string claim;
  std::string measured;
  Verdict verdict = Verdict::Info;
  double seconds = 0;
};

/// Ids understood by `verify --theorem`.
const std::vector<std::string>& claim_ids();

/// Runs every claim that applies to ctx.q() (or only those listed in `only`).
std::vector<ClaimReport> run_verify(const Context& ctx, const std::set<std::string>& only, unsigned workers);

/// Entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twc::cli
