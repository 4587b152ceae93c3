#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "cli/instance_io.hpp"
#include "locsub/coherence.hpp"
#include "locsub/oracle.hpp"

namespace locsub::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalidInstance = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitInternal = 4;
inline constexpr int kExitParse = 5;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandResult {
  Json document;
  int exit_code = kExitOk;
};

/// Germs, glob, coherence flags, components and the foliation topology.
Json analyze(const Instance& inst, std::size_t max_opens = kDefaultMaxOpens);

/// Theorem checkers plus the three-way glob comparison on one instance.
/// Exit code 4 only when an internal invariant fails; theorem
/// counterexamples are reported with exit code 0.
/// `max_arrows` bounds the wide-subgroupoid enumeration behind the
/// definitional glob.
CommandResult verify(const Instance& inst, std::size_t max_opens = kDefaultMaxOpens,
                     std::size_t max_arrows = kDefaultMaxNonIdentityArrows);
CommandResult verify_suite(std::size_t max_points, std::size_t max_extra_arrows,
                           std::size_t max_opens = kDefaultMaxOpens);

/// Fast algorithms against their brute-force oracles.
CommandResult oracle_check(const Instance& inst, std::size_t max_arrows = kDefaultMaxNonIdentityArrows);
CommandResult oracle_check_suite(std::size_t max_points, std::size_t max_extra_arrows);

Json theorem_json(const TheoremReport& report);

/// Aligned plain-text rendering of a report document.
std::string render_text(const Json& doc);

/// Full command line entry point: parses arguments, runs the subcommand,
/// writes the report to `out` and diagnostics to `err`, returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace locsub::cli
