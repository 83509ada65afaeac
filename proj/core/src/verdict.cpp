#include "shiftdyn/verdict.hpp"

#include <algorithm>

#include "shiftdyn/types.hpp"

namespace shiftdyn {

namespace {

bool non_increasing(const Trace& t, std::size_t from) {
  for (std::size_t k = from + 1; k < t.size(); ++k) {
    if (t[k] > t[k - 1]) return false;
  }
  return true;
}

bool non_decreasing(const Trace& t, std::size_t from) {
  for (std::size_t k = from + 1; k < t.size(); ++k) {
    if (t[k] < t[k - 1]) return false;
  }
  return true;
}

Status decay_status(const std::vector<Trace>& traces,
                    const CriterionThresholds& th) {
  const auto w = static_cast<std::size_t>(th.window);
  bool all_satisfied = true;
  for (const Trace& t : traces) {
    if (t.size() < w) return Status::kInconclusive;
    const std::size_t from = t.size() - w;
    const auto window_begin = t.begin() + static_cast<std::ptrdiff_t>(from);
    const bool above = std::all_of(window_begin, t.end(), [&](double v) {
      return v > th.violate_log;
    });
    const bool stuck = non_decreasing(t, from) &&
                       std::all_of(window_begin, t.end(),
                                   [](double v) { return v >= 0.0; });
    if (above || stuck) return Status::kViolatedAtHorizon;
    if (!(t.back() < th.satisfy_log && non_increasing(t, from))) {
      all_satisfied = false;
    }
  }
  return all_satisfied && !traces.empty() ? Status::kSatisfiedAtHorizon
                                          : Status::kInconclusive;
}

Status growth_status(const std::vector<Trace>& traces,
                     const CriterionThresholds& th,
                     std::optional<double> bound) {
  if (bound) return Status::kViolatedAtHorizon;
  if (traces.size() != 1 || traces.front().empty()) return Status::kInconclusive;
  const double best =
      *std::max_element(traces.front().begin(), traces.front().end());
  return best > th.violate_log ? Status::kSatisfiedAtHorizon
                               : Status::kInconclusive;
}

}  // namespace

void CriterionThresholds::validate() const {
  if (!(satisfy_log < 0.0 && 0.0 < violate_log)) {
    throw InvalidArgument("thresholds need satisfy_log < 0 < violate_log");
  }
  if (window < 1) throw InvalidArgument("threshold window must be >= 1");
}

const char* to_string(Status status) noexcept {
  switch (status) {
    case Status::kSatisfiedAtHorizon: return "SatisfiedAtHorizon";
    case Status::kViolatedAtHorizon: return "ViolatedAtHorizon";
    case Status::kInconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

const char* to_string(DecisionRule rule) noexcept {
  return rule == DecisionRule::kDecay ? "decay" : "growth";
}

Trace running_max(const Trace& trace) {
  Trace out;
  out.reserve(trace.size());
  double best = -HUGE_VAL;
  for (double v : trace) {
    best = std::max(best, v);
    out.push_back(best);
  }
  return out;
}

Status recompute_status(const Verdict& v) {
  return v.rule == DecisionRule::kDecay
             ? decay_status(v.traces, v.thresholds)
             : growth_status(v.traces, v.thresholds, v.structural_bound);
}

Verdict decide(DecisionRule rule, std::vector<Trace> traces,
               const CriterionThresholds& thresholds,
               std::optional<double> structural_bound) {
  thresholds.validate();
  Verdict v;
  v.rule = rule;
  v.thresholds = thresholds;
  v.structural_bound = rule == DecisionRule::kGrowth ? structural_bound
                                                     : std::nullopt;
  v.traces = std::move(traces);
  v.horizon = v.traces.empty() ? 0 : static_cast<int>(v.traces.front().size());
  if (rule == DecisionRule::kDecay) {
    double margin = -HUGE_VAL;
    for (const Trace& t : v.traces) {
      if (!t.empty()) margin = std::max(margin, t.back() - thresholds.satisfy_log);
    }
    v.margin = margin;
  } else {
    const Trace& t = v.traces.front();
    v.margin = t.empty() ? -HUGE_VAL
                         : *std::max_element(t.begin(), t.end()) -
                               thresholds.violate_log;
  }
  v.status = recompute_status(v);
  return v;
}

}  // namespace shiftdyn
