#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shiftdyn/operator.hpp"
#include "shiftdyn/schedule.hpp"
#include "shiftdyn/verdict.hpp"
#include "shiftdyn/weights.hpp"

namespace shiftdyn {

/// Outcome of a two-sided decay condition along a schedule.
/// verdict.traces[0] is the forward-product trace, traces[1] the
/// reciprocal-product trace, one sample per n_k.
struct ConditionResult {
  std::vector<Index> powers;
  WeightBounds bounds;  // over the whole weight domain
  bool invertible = false;
  Verdict verdict;

  const Trace& trace_plus() const { return verdict.traces.at(0); }
  const Trace& trace_minus() const { return verdict.traces.at(1); }
};

/// Bilateral forward shift, subspace F, anchor m_i in F:
///   trace_plus(k)  = sum_{j=m_i}^{m_i+n_k-1} ln w_j
///   trace_minus(k) = sum_{j=1-m_i}^{n_k-m_i} ln(1/w_{-j})
/// Both must decay to -inf for the shift to be F-transitive.
ConditionResult eq65_forward(const OperatorSpec& op, const IndexSet& F,
                             Index m_i, const PowerSchedule& sched,
                             const CriterionThresholds& th = {});

/// Bilateral backward shift, mirror of eq65_forward:
///   trace_plus(k)  = sum_{j=m_i}^{m_i+n_k-1} ln w_{-j}
///   trace_minus(k) = sum_{j=1-m_i}^{n_k-m_i} ln(1/w_j)
ConditionResult backward_condition(const OperatorSpec& op, const IndexSet& F,
                                   Index m_i, const PowerSchedule& sched,
                                   const CriterionThresholds& th = {});

struct Thm19Entry {
  Index m_j = 0;
  double plus_log = 0.0;   // ln prod_{k=m_j}^{m_j+n-1} w_k
  double minus_log = 0.0;  // ln prod_{k=1-m_j}^{n-m_j} 1/w_{-k}
  double plus_margin = 0.0;   // plus_log - ln(delta)
  double minus_margin = 0.0;
  bool pass = false;
};

struct Thm19Report {
  double delta = 0.0;
  Index q = 0;
  Index n = 0;
  std::vector<Thm19Entry> entries;
  bool vacuous = false;  // no m_j in F with |m_j| <= q
  bool pass = false;     // all entries pass and not vacuous
};

/// Finite check at a single power n: every m_j in F with |m_j| <= q must have
/// both products below delta. Requires op^n F subset of F.
Thm19Report thm19_finite_check(const OperatorSpec& op, const IndexSet& F,
                               double delta, Index q, Index n);

struct Thm84Applicability {
  bool applicable = false;
  double b = 0.0;  // inf of w_n over n < 0, exact from rule structure
  std::optional<Index> witness;  // smallest m_i >= 0 in F within the window
  Index probe_window = 0;
  std::string note;
};

/// Hypothesis of the bounded-below variant: w_n >= b > 0 for n < 0 and some
/// m_i >= 0 in F (searched in [0, probe_window]).
Thm84Applicability thm84_applicability(const OperatorSpec& op,
                                       const IndexSet& F, Index probe_window);

struct GatedCondition {
  Thm84Applicability applicability;
  std::optional<ConditionResult> result;  // only when applicable
};

/// eq65_forward gated by thm84_applicability; runs at `m_i` when given,
/// otherwise at the witness. A given m_i must be >= 0.
GatedCondition thm84_condition(const OperatorSpec& op, const IndexSet& F,
                               const PowerSchedule& sched,
                               const CriterionThresholds& th,
                               Index probe_window,
                               std::optional<Index> m_i = std::nullopt);

/// backward_condition gated by the same hypothesis on the backward shift's
/// own weights (w_n >= b > 0 for n < 0, some m_i >= 0 in F).
GatedCondition prop85_condition(const OperatorSpec& op, const IndexSet& F,
                                const PowerSchedule& sched,
                                const CriterionThresholds& th,
                                Index probe_window,
                                std::optional<Index> m_i = std::nullopt);

struct DirectSumResult {
  ConditionResult left;
  ConditionResult right;
  // verdict.traces = {max plus trace, max minus trace}
  Verdict verdict;

  const Trace& max_plus() const { return verdict.traces.at(0); }
  const Trace& max_minus() const { return verdict.traces.at(1); }
};

/// T1 (+) T2 on M1 (+) M2: pointwise max of the component traces of
/// eq65_forward, decided with the decay rule.
DirectSumResult direct_sum_condition(const DirectSumSpec& ds, Index m_i,
                                     Index h_p, const PowerSchedule& sched,
                                     const CriterionThresholds& th = {});

struct UnilateralResult {
  Trace partial;      // P(n) = sum_{j=1}^{n} ln w_{m_i+j}, n = 1..N
  Trace running;      // running max of `partial`
  std::vector<Index> admissible;  // admissible powers <= N
  bool hypothesis_holds = false;  // some admissible power exists
  Verdict verdict;
};

/// Unilateral backward shift: limsup of w_{m_i+1} ... w_{m_i+n} must be
/// infinite. Unilateral forward shifts are rejected outright.
UnilateralResult unilateral_limsup(const OperatorSpec& op, const IndexSet& F,
                                   Index m_i, Index N,
                                   const CriterionThresholds& th = {});

struct DirectSumUnilateralResult {
  UnilateralResult left;
  UnilateralResult right;
  Trace min_trace;  // min(left.partial, right.partial) per n
  Trace running;
  Verdict verdict;
};

/// B1 (+) B2: sup over n of min of the two partial products must be
/// infinite.
DirectSumUnilateralResult direct_sum_unilateral(
    const DirectSumSpec& ds, Index m_i, Index h_p, Index N,
    const CriterionThresholds& th = {});

struct Lemma35Entry {
  Index m_r = 0;
  double final_log = 0.0;   // ln ||op^{n_K} e_{m_r}||
  double distortion = 0.0;  // C: bound on |trace_r - trace_i| for every k
  bool pass = false;
};

struct Lemma35Report {
  Trace anchor_trace;  // ln ||op^{n_k} e_{m_i}||
  bool triggered = false;  // anchor trace ends below ln(tol)
  double log_tol = 0.0;
  std::vector<Lemma35Entry> entries;
  bool pass = false;  // every entry passes (vacuously when not triggered)
};

/// Decay propagation: once op^{n_k} e_{m_i} is below tol, op^{n_k} e_{m_r}
/// is below tol * e^C, where C is the log-distortion across the index gap:
/// sum of |ln w| over the fixed gap plus gap * max|ln w| for the moving end.
Lemma35Report lemma35_probe(const OperatorSpec& op, const IndexSet& F,
                            const PowerSchedule& sched, Index m_i,
                            const std::vector<Index>& others, double tol);

}  // namespace shiftdyn
