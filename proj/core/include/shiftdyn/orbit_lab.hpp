#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shiftdyn/criteria.hpp"
#include "shiftdyn/index_set.hpp"
#include "shiftdyn/operator.hpp"
#include "shiftdyn/schedule.hpp"
#include "shiftdyn/sparse_vector.hpp"
#include "shiftdyn/verdict.hpp"

namespace shiftdyn {

/// Finite surrogate [lo, hi] for the sequence space. Bilateral windows must
/// straddle the origin; unilateral windows start at 0.
class TruncationWindow {
 public:
  TruncationWindow(Domain domain, Index lo, Index hi);
  // [0, size - 1] on N, [-size/2, size - 1 - size/2] on Z.
  static TruncationWindow of_size(Domain domain, Index size);

  Domain domain() const noexcept { return domain_; }
  Index lo() const noexcept { return lo_; }
  Index hi() const noexcept { return hi_; }
  Index size() const noexcept { return hi_ - lo_ + 1; }
  bool contains(Index m) const noexcept { return m >= lo_ && m <= hi_; }
  bool contains(const SparseVector& v) const;

 private:
  Domain domain_;
  Index lo_;
  Index hi_;
};

/// The limit condition behind a criterion vector did not hold. Carries the
/// verdict when one was computed.
class ConditionRefused : public Error {
 public:
  ConditionRefused(const std::string& what, std::optional<Verdict> verdict)
      : Error(what), verdict_(std::move(verdict)) {}
  const std::optional<Verdict>& verdict() const noexcept { return verdict_; }

 private:
  std::optional<Verdict> verdict_;
};

struct CriterionVector {
  SparseVector x;
  std::vector<Index> placements;  // n_{k_j}, one per target
  // Bound on ||T^{n_{k_j}} x - y_j|| valid for every j.
  double tail_bound = 0.0;
  std::vector<double> target_bounds;  // the same bound, per target
  std::optional<Verdict> condition;   // the precheck that admitted the build
};

/// x = sum_j S^{n_{k_j}} y_j with placements chosen greedily along `sched`.
/// With budget_j = eps * 2^-(j+1) each placement n satisfies
///   ||S^n y_j||                  <= budget_j
///   ||S^(n - n_i) y_j||          <= budget_j        for every i < j
///   ||T^(n - n_i) y_i||          <= budget_j / j    for every i < j
/// so every cross term is charged to exactly one budget and tail_bound <= eps.
///
/// The matching limit condition (forward decay, backward decay or limsup,
/// by operator kind) is evaluated first at the support index nearest the
/// origin; anything but Satisfied raises ConditionRefused. Unilateral
/// forward shifts are refused without a verdict. Throws HorizonError when
/// the schedule runs out.
CriterionVector build_criterion_vector(const OperatorSpec& op,
                                       const IndexSet& F,
                                       const std::vector<SparseVector>& targets,
                                       double eps, const PowerSchedule& sched,
                                       const CriterionThresholds& th = {});

struct TargetOutcome {
  std::size_t id = 0;
  bool hit = false;
  std::optional<Index> first_hit_power;
  double achieved_distance = 0.0;  // at first_hit_power when hit
  double best_distance = 0.0;      // over every admissible power sampled
  std::optional<Index> best_power;
  std::optional<Index> placement;
  std::optional<double> placement_distance;
};

struct DensityReport {
  std::vector<TargetOutcome> targets;
  double eps = 0.0;
  double hit_rate = 0.0;
  // Norm of all mass shifted out of the window so far (cumulative, hence
  // monotone in the iteration count).
  double leaked_norm_max = 0.0;
  Index iterations = 0;
  Index admissible_samples = 0;
};

/// Iterates v <- op v from v = x for n = 1..n_iter inside `window`. At each
/// power with op^n F subset of F whose iterate has no coefficient above
/// 1e-12 off F, every unhit target closer than eps is marked hit. Power 0 is
/// never sampled. `placements`, when given, index-match `grid` and record
/// the distance at that power.
DensityReport density_experiment(
    const OperatorSpec& op, const IndexSet& F, const SparseVector& x,
    const std::vector<SparseVector>& grid, double eps, Index n_iter,
    const TruncationWindow& window,
    const std::optional<std::vector<Index>>& placements = std::nullopt,
    unsigned threads = 1);

/// +-e_m and +-(e_m + e_m')/sqrt(2) over the first `count` members of F in
/// the window, members ordered by distance from the origin.
std::vector<SparseVector> default_grid(const IndexSet& F,
                                       const TruncationWindow& window,
                                       std::size_t count);

struct TransitivityResult {
  bool found = false;
  SparseVector z;
  Index n = 0;
  double x_distance = 0.0;  // ||x_target - z||
  double y_distance = 0.0;  // ||T^n z - y_target||
  std::size_t powers_searched = 0;
  std::size_t points_searched = 0;
};

/// Searches z = x' + S^n y_target, x' a grid perturbation of x_target (each
/// of up to six support coordinates moved by 0 or +-grid_resolution, in
/// order of total displacement), over admissible n in `sched`. Returns the
/// first pair with both distances below eps. Not finding one only speaks
/// about the searched grid.
TransitivityResult transitivity_probe(const OperatorSpec& op,
                                      const IndexSet& F,
                                      const SparseVector& x_target,
                                      const SparseVector& y_target, double eps,
                                      const PowerSchedule& sched,
                                      double grid_resolution);

struct PerpProbeEntry {
  std::string label;
  std::optional<Index> anchor;
  std::optional<ConditionResult> result;
  std::string note;  // set when the evaluator could not run
};

struct PerpProbeReport {
  PerpProbeEntry forward_m1;     // forward condition, (op, M1)
  PerpProbeEntry backward_m2;    // backward condition, (adjoint, M2)
  PerpProbeEntry backward_perp;  // backward condition, (adjoint, perp(M1))
  bool perp_degenerate = false;
  SetRelation m2_vs_perp = SetRelation::kOther;
};

/// Side-by-side evidence for M2 against perp(M1). Draws no conclusion.
PerpProbeReport perp_question_probe(const OperatorSpec& op,
                                    const IndexSet& M1, const IndexSet& M2,
                                    const PowerSchedule& sched_fwd,
                                    const PowerSchedule& sched_bwd,
                                    const CriterionThresholds& th = {});

}  // namespace shiftdyn
