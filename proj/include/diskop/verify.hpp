#ifndef DISKOP_VERIFY_HPP
#define DISKOP_VERIFY_HPP

#include "diskop/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace diskop {

/// A failed trial, reproducible from (seed, suite, trial) or from the scene.
struct Counterexample {
  int trial = 0;
  std::uint64_t trial_seed = 0;
  std::string check;    // which property failed
  std::string message;
  std::string scene;    // serialized scene holding the inputs
  std::string command;  // subcommand that re-runs the failing check on the scene
};

struct SuiteReport {
  std::string name;
  int trials = 0;      // instances generated and checked
  int failures = 0;
  long rejections = 0;  // generator rejections summed over trials
  int starved = 0;      // trials abandoned after the rejection limit
  std::optional<Counterexample> counterexample;  // the first failure by trial index
  double elapsed = 0;  // seconds
};

struct VerifyReport {
  std::uint64_t seed = 0;
  NumericMode mode = NumericMode::Exact;
  int trials = 0;
  std::vector<SuiteReport> suites;

  int failures() const;
};

/// operad-laws, divisibility, left-cancel, disk-bounds, bubble-transfer,
/// core-embedding, interchange, unary-iso, flows.
const std::vector<std::string>& verify_suite_names();

/// "all" or a comma-separated list; UsageError on unknown names.
std::vector<std::string> parse_suite_selection(const std::string& text);

/// Seed of one trial, a fixed mix of the run seed, the suite name and the index.
std::uint64_t trial_seed(std::uint64_t seed, const std::string& suite, int trial);

struct VerifyOptions {
  int threads = 0;                  // 0: hardware concurrency
  std::optional<int> only_trial;    // run a single trial index
};

/// Runs `trials` independent trials of each suite. Trials are spread over
/// worker threads; the report depends only on seed, trials and the scalar type.
/// UsageError when trials < 1.
template <class Scalar>
VerifyReport verify_suite(std::uint64_t seed, int trials, const std::vector<std::string>& suites,
                          const VerifyOptions& options = {});

/// Canonical JSON; elapsed times only when `timing` is set, so that reports
/// of the same run compare byte for byte.
std::string report_json(const VerifyReport& report, bool timing = false);

}  // namespace diskop

#endif  // DISKOP_VERIFY_HPP
