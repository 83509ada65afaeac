#include "shiftdyn/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <span>

#include "shiftdyn/invariance.hpp"
#include "shiftdyn/log_magnitude.hpp"
#include "shiftdyn/shift_ops.hpp"

namespace shiftdyn {

namespace {

// Running sums of term(first), term(first+1), ... sampled after counts[k]
// terms. One accumulator walks the whole range, so each sample is
// bit-identical to a fresh sum over its prefix.
template <class Term>
Trace running_sums(Index first, std::span<const Index> counts, Term term) {
  Trace out;
  out.reserve(counts.size());
  LogAccumulator acc;
  Index done = 0;
  for (Index count : counts) {
    for (; done < count; ++done) acc.add(term(first + done));
    out.push_back(acc.value());
  }
  return out;
}

void require_kind(const OperatorSpec& op, ShiftKind kind, const char* what) {
  if (op.kind() != kind) {
    throw PreconditionError(std::string(what) + " needs a " + to_string(kind) +
                            " operator, got " + to_string(op.kind()));
  }
}

void require_member(const IndexSet& F, Index m, const char* name) {
  if (!F.contains(m)) {
    throw PreconditionError(std::string(name) + " = " + std::to_string(m) +
                            " is not in the subspace index set");
  }
}

void require_nondegenerate(const IndexSet& F) {
  if (F.degenerate()) {
    throw PreconditionError("criteria need a non-trivial (infinite) subspace");
  }
}

ConditionResult two_sided(const OperatorSpec& op, const IndexSet& F,
                          Index m_i, const PowerSchedule& sched,
                          const CriterionThresholds& th, bool forward) {
  require_same_domain(op, F);
  require_nondegenerate(F);
  require_member(F, m_i, "m_i");
  require_admissible(op, F, sched.powers());
  th.validate();

  const WeightSequence& w = op.weights();
  ConditionResult r;
  r.powers.assign(sched.powers().begin(), sched.powers().end());
  r.bounds = w.bounds();
  r.invertible = r.bounds.bounded_away();

  Trace plus, minus;
  if (forward) {
    plus = running_sums(m_i, sched.powers(),
                        [&w](Index j) { return w.log_at(j); });
    minus = running_sums(1 - m_i, sched.powers(),
                         [&w](Index j) { return -w.log_at(-j); });
  } else {
    plus = running_sums(m_i, sched.powers(),
                        [&w](Index j) { return w.log_at(-j); });
    minus = running_sums(1 - m_i, sched.powers(),
                         [&w](Index j) { return -w.log_at(j); });
  }
  r.verdict = decide(DecisionRule::kDecay, {std::move(plus), std::move(minus)},
                     th);
  return r;
}

GatedCondition gated(const OperatorSpec& op, const IndexSet& F,
                     const PowerSchedule& sched, const CriterionThresholds& th,
                     Index probe_window, std::optional<Index> m_i,
                     bool forward) {
  GatedCondition g;
  g.applicability = thm84_applicability(op, F, probe_window);
  if (!g.applicability.applicable) return g;
  Index anchor = *g.applicability.witness;
  if (m_i) {
    if (*m_i < 0) {
      throw PreconditionError("the bounded-below variant needs m_i >= 0");
    }
    anchor = *m_i;
  }
  g.result = two_sided(op, F, anchor, sched, th, forward);
  return g;
}

UnilateralResult unilateral_impl(const OperatorSpec& op, const IndexSet& F,
                                 Index m_i, Index N,
                                 const CriterionThresholds& th,
                                 std::optional<double>* bound_out) {
  if (op.kind() == ShiftKind::kUnilateralForward) {
    throw PreconditionError(
        "unilateral forward weighted shifts can not be subspace-hypercyclic "
        "for any subspace");
  }
  require_kind(op, ShiftKind::kUnilateralBackward, "the limsup condition");
  require_same_domain(op, F);
  require_nondegenerate(F);
  require_member(F, m_i, "m_i");
  if (N < 1) throw InvalidArgument("limsup horizon N must be >= 1");
  th.validate();

  const WeightSequence& w = op.weights();
  UnilateralResult r;
  std::vector<Index> counts(static_cast<std::size_t>(N));
  for (Index n = 1; n <= N; ++n) counts[static_cast<std::size_t>(n - 1)] = n;
  r.partial = running_sums(m_i + 1, counts,
                           [&w](Index j) { return w.log_at(j); });
  r.running = running_max(r.partial);
  r.admissible = admissible_powers(op, F, N).powers;
  r.hypothesis_holds = !r.admissible.empty();

  const PartialSumBound bound = w.partial_sum_sup(m_i + 1);
  std::optional<double> structural;
  if (bound.kind == PartialSumBound::Kind::kBounded) structural = bound.sup;
  if (bound_out) *bound_out = structural;
  r.verdict = decide(DecisionRule::kGrowth, {r.partial}, th, structural);
  return r;
}

}  // namespace

ConditionResult eq65_forward(const OperatorSpec& op, const IndexSet& F,
                             Index m_i, const PowerSchedule& sched,
                             const CriterionThresholds& th) {
  require_kind(op, ShiftKind::kBilateralForward, "eq65_forward");
  return two_sided(op, F, m_i, sched, th, /*forward=*/true);
}

ConditionResult backward_condition(const OperatorSpec& op, const IndexSet& F,
                                   Index m_i, const PowerSchedule& sched,
                                   const CriterionThresholds& th) {
  require_kind(op, ShiftKind::kBilateralBackward, "backward_condition");
  return two_sided(op, F, m_i, sched, th, /*forward=*/false);
}

Thm19Report thm19_finite_check(const OperatorSpec& op, const IndexSet& F,
                               double delta, Index q, Index n) {
  require_kind(op, ShiftKind::kBilateralForward, "thm19_finite_check");
  require_same_domain(op, F);
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  if (q < 0) throw InvalidArgument("q must be >= 0");
  if (!is_power_invariant(op, F, n)) {
    throw PreconditionError("n = " + std::to_string(n) +
                            " does not leave the subspace invariant");
  }
  const WeightSequence& w = op.weights();
  const double log_delta = std::log(delta);

  Thm19Report report;
  report.delta = delta;
  report.q = q;
  report.n = n;
  for (Index m : F.enumerate(-q, q)) {
    Thm19Entry e;
    e.m_j = m;
    e.plus_log = log_weight_sum(w, m, m + n - 1);
    LogAccumulator minus;
    for (Index k = 1 - m; k <= n - m; ++k) minus.add(-w.log_at(-k));
    e.minus_log = minus.value();
    e.plus_margin = e.plus_log - log_delta;
    e.minus_margin = e.minus_log - log_delta;
    e.pass = e.plus_log < log_delta && e.minus_log < log_delta;
    report.entries.push_back(e);
  }
  report.vacuous = report.entries.empty();
  report.pass = !report.vacuous &&
                std::all_of(report.entries.begin(), report.entries.end(),
                            [](const Thm19Entry& e) { return e.pass; });
  return report;
}

Thm84Applicability thm84_applicability(const OperatorSpec& op,
                                       const IndexSet& F, Index probe_window) {
  if (op.domain() != Domain::kBilateral) {
    throw PreconditionError("the bounded-below variant is for bilateral shifts");
  }
  require_same_domain(op, F);
  if (probe_window < 0) throw InvalidArgument("probe_window must be >= 0");

  Thm84Applicability a;
  a.probe_window = probe_window;
  a.b = op.weights().bounds_below_zero().inf;
  a.witness = F.first_member(0, probe_window);
  if (!a.witness) {
    a.note = "witness not found <= window " + std::to_string(probe_window);
  } else if (!(a.b > 0.0)) {
    a.note = "negative weights are not bounded below";
  }
  a.applicable = a.b > 0.0 && a.witness.has_value();
  return a;
}

GatedCondition thm84_condition(const OperatorSpec& op, const IndexSet& F,
                               const PowerSchedule& sched,
                               const CriterionThresholds& th,
                               Index probe_window, std::optional<Index> m_i) {
  require_kind(op, ShiftKind::kBilateralForward, "thm84_condition");
  return gated(op, F, sched, th, probe_window, m_i, /*forward=*/true);
}

GatedCondition prop85_condition(const OperatorSpec& op, const IndexSet& F,
                                const PowerSchedule& sched,
                                const CriterionThresholds& th,
                                Index probe_window, std::optional<Index> m_i) {
  require_kind(op, ShiftKind::kBilateralBackward, "prop85_condition");
  return gated(op, F, sched, th, probe_window, m_i, /*forward=*/false);
}

DirectSumResult direct_sum_condition(const DirectSumSpec& ds, Index m_i,
                                     Index h_p, const PowerSchedule& sched,
                                     const CriterionThresholds& th) {
  require_kind(ds.left, ShiftKind::kBilateralForward, "direct_sum_condition");
  require_kind(ds.right, ShiftKind::kBilateralForward, "direct_sum_condition");
  DirectSumResult r{eq65_forward(ds.left, ds.left_space, m_i, sched, th),
                    eq65_forward(ds.right, ds.right_space, h_p, sched, th),
                    {}};
  std::vector<Trace> maxed(2);
  for (std::size_t side = 0; side < 2; ++side) {
    const Trace& a = r.left.verdict.traces[side];
    const Trace& b = r.right.verdict.traces[side];
    maxed[side].resize(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      maxed[side][k] = std::max(a[k], b[k]);
    }
  }
  r.verdict = decide(DecisionRule::kDecay, std::move(maxed), th);
  return r;
}

UnilateralResult unilateral_limsup(const OperatorSpec& op, const IndexSet& F,
                                   Index m_i, Index N,
                                   const CriterionThresholds& th) {
  return unilateral_impl(op, F, m_i, N, th, nullptr);
}

DirectSumUnilateralResult direct_sum_unilateral(
    const DirectSumSpec& ds, Index m_i, Index h_p, Index N,
    const CriterionThresholds& th) {
  std::optional<double> left_bound, right_bound;
  DirectSumUnilateralResult r;
  r.left = unilateral_impl(ds.left, ds.left_space, m_i, N, th, &left_bound);
  r.right = unilateral_impl(ds.right, ds.right_space, h_p, N, th, &right_bound);
  r.min_trace.resize(r.left.partial.size());
  for (std::size_t k = 0; k < r.min_trace.size(); ++k) {
    r.min_trace[k] = std::min(r.left.partial[k], r.right.partial[k]);
  }
  r.running = running_max(r.min_trace);
  // sup min(P, Q) <= min(sup P, sup Q): one bounded side bounds the pair.
  std::optional<double> bound;
  if (left_bound && right_bound) {
    bound = std::min(*left_bound, *right_bound);
  } else if (left_bound) {
    bound = left_bound;
  } else if (right_bound) {
    bound = right_bound;
  }
  r.verdict = decide(DecisionRule::kGrowth, {r.min_trace}, th, bound);
  return r;
}

Lemma35Report lemma35_probe(const OperatorSpec& op, const IndexSet& F,
                            const PowerSchedule& sched, Index m_i,
                            const std::vector<Index>& others, double tol) {
  if (op.domain() != Domain::kBilateral) {
    throw PreconditionError("decay propagation needs a bilateral shift");
  }
  require_same_domain(op, F);
  require_member(F, m_i, "m_i");
  for (Index m : others) require_member(F, m, "m_r");
  require_admissible(op, F, sched.powers());
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");

  const WeightSequence& w = op.weights();
  const WeightBounds b = w.bounds();
  if (!b.bounded_away()) {
    throw PreconditionError("decay propagation needs an invertible shift");
  }
  const double max_abs_log =
      std::max(std::fabs(std::log(b.inf)), std::fabs(std::log(b.sup)));

  auto log_norm = [&](Index m, Index n) {
    return power_product(op, m, n).log().log_value;
  };

  Lemma35Report report;
  report.log_tol = std::log(tol);
  for (Index n : sched.powers()) report.anchor_trace.push_back(log_norm(m_i, n));
  report.triggered = report.anchor_trace.back() < report.log_tol;

  const Index n_final = sched.back();
  for (Index m_r : others) {
    Lemma35Entry e;
    e.m_r = m_r;
    e.final_log = log_norm(m_r, n_final);
    // The product windows of e_{m_i} and e_{m_r} differ by the fixed stretch
    // between the two anchors and by a stretch of the same length at the
    // moving end, which invertibility bounds uniformly in n.
    const Index lo = std::min(m_i, m_r);
    const Index hi = std::max(m_i, m_r);
    const Index first = op.forward() ? lo : lo + 1;
    const Index last = op.forward() ? hi - 1 : hi;
    double fixed = 0.0;
    for (Index j = first; j <= last; ++j) fixed += std::fabs(w.log_at(j));
    e.distortion = fixed + static_cast<double>(hi - lo) * max_abs_log;
    e.pass = !report.triggered || e.final_log < report.log_tol + e.distortion;
    report.entries.push_back(e);
  }
  report.pass = std::all_of(report.entries.begin(), report.entries.end(),
                            [](const Lemma35Entry& e) { return e.pass; });
  return report;
}

}  // namespace shiftdyn
