#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace shiftdyn {

using Trace = std::vector<double>;

/// Finite-horizon decision thresholds for "lim ... = 0" (decay) and
/// "limsup ... = inf" (growth) statements, in the log domain.
struct CriterionThresholds {
  double satisfy_log = std::log(1e-6);
  double violate_log = std::log(1e6);
  int window = 5;

  void validate() const;  // satisfy_log < 0 < violate_log, window >= 1
  friend bool operator==(const CriterionThresholds&,
                         const CriterionThresholds&) = default;
};

enum class Status { kSatisfiedAtHorizon, kViolatedAtHorizon, kInconclusive };

const char* to_string(Status status) noexcept;

enum class DecisionRule {
  // Every trace must decay to -inf. Satisfied: each trace ends below
  // satisfy_log and is non-increasing over its last `window` samples.
  // Violated: some trace's last window is entirely above violate_log, or is
  // non-decreasing and never below 0 (the products never drop under 1).
  // Fewer than `window` samples is always inconclusive.
  kDecay,
  // The single trace holds partial log-products whose supremum must be
  // infinite. Violated: an exact structural bound on the supremum exists.
  // Satisfied: otherwise, once the running maximum exceeds violate_log.
  kGrowth,
};

const char* to_string(DecisionRule rule) noexcept;

/// Horizon-bounded outcome of a limit condition. The status is a pure
/// function of (rule, traces, thresholds, structural_bound).
struct Verdict {
  Status status = Status::kInconclusive;
  int horizon = 0;
  // kDecay: max over traces of (last - satisfy_log); negative is good.
  // kGrowth: running max - violate_log; positive is good.
  double margin = 0.0;
  DecisionRule rule = DecisionRule::kDecay;
  CriterionThresholds thresholds;
  std::vector<Trace> traces;
  std::optional<double> structural_bound;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

Verdict decide(DecisionRule rule, std::vector<Trace> traces,
               const CriterionThresholds& thresholds,
               std::optional<double> structural_bound = std::nullopt);

// Status recomputed from the recorded traces and thresholds.
Status recompute_status(const Verdict& verdict);

// Running maximum of a trace, sample by sample.
Trace running_max(const Trace& trace);

}  // namespace shiftdyn
