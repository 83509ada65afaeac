#pragma once

#include <string>
#include <variant>
#include <vector>

#include "shiftdyn/criteria.hpp"
#include "shiftdyn/operator.hpp"
#include "shiftdyn/schedule.hpp"

namespace shiftdyn {

struct ConstantFamily {
  double lambda = 1.0;
};
struct StepFamily {
  double pos = 1.0;
  double neg = 1.0;
};
struct PeriodicFamily {
  std::vector<double> values;
};
struct BlockInterleavedFamily {
  double low = 1.0;
  double high = 1.0;
  std::vector<Index> lengths;
};

using FamilyParams = std::variant<ConstantFamily, StepFamily, PeriodicFamily,
                                  BlockInterleavedFamily>;

// Throws InvalidArgument on non-positive parameters.
WeightSequence make_family(const FamilyParams& params,
                           Domain domain = Domain::kBilateral);

class ConstructionError : public Error {
 public:
  using Error::Error;
};

struct HerreroParams {
  double low = 0.5;
  double high = 2.0;
  std::vector<Index> lengths;
  Index period = 2;
  CriterionThresholds thresholds;
  bool parallel = false;  // verify the two conditions concurrently
};

/// A weight sequence whose forward shift T satisfies the forward decay
/// condition on M1 while its adjoint satisfies the backward condition on M2.
///
/// Layout: block_interleaved(low, high, lengths) on Z. M1 = {0} mod p,
/// M2 = {1} mod p. sched_fwd samples the ends of the first K low blocks and
/// sched_bwd the ends of the first K high blocks (K = lengths.size()), each
/// rounded down to a multiple of p.
struct HerreroBundle {
  HerreroParams params;
  OperatorSpec op;       // bilateral forward
  OperatorSpec adjoint;  // bilateral backward
  IndexSet m1;
  IndexSet m2;
  Index anchor_fwd = 0;  // m_i in M1
  Index anchor_bwd = 1;  // m_i' in M2
  PowerSchedule sched_fwd;
  PowerSchedule sched_bwd;
  ConditionResult forward;   // eq65_forward(op, M1, ...)
  ConditionResult backward;  // backward_condition(adjoint, M2, ...)
};

struct HerreroOutcome {
  HerreroBundle bundle;
  bool verified = false;  // both embedded verdicts SatisfiedAtHorizon
  std::string diagnostic;

  // Throws ConstructionError unless verified.
  const HerreroBundle& witness() const;
};

// Throws InvalidArgument for bad parameters and ConstructionError when the
// emitted schedules are not admissible.
HerreroOutcome herrero_construction(const HerreroParams& params);

/// 2B on l2(N) with M = {x : x_{2n} = 0}.
struct Example2B {
  OperatorSpec op;
  IndexSet space;
};

Example2B paper_example_2B();

}  // namespace shiftdyn
