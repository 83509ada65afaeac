#include "shiftdyn/constructors.hpp"

#include <future>
#include <string>

#include "shiftdyn/invariance.hpp"
#include "shiftdyn/shift_ops.hpp"

namespace shiftdyn {

namespace {

// Ends of the blocks at positions parity, parity + 2, ..., rounded down to a
// multiple of p.
PowerSchedule block_schedule(const BlockInterleavedRule& rule, std::size_t K,
                             std::size_t parity, Index p) {
  const std::vector<Index> ends = block_ends(rule, 2 * K);
  std::vector<Index> powers;
  for (std::size_t k = 0; k < K; ++k) {
    const Index end = ends[2 * k + parity];
    powers.push_back(end - floor_mod(end, p));
  }
  try {
    return PowerSchedule::explicit_powers(std::move(powers));
  } catch (const InvalidArgument& e) {
    throw ConstructionError(
        std::string("block ends do not give an increasing schedule of "
                    "multiples of the period: ") +
        e.what());
  }
}

}  // namespace

WeightSequence make_family(const FamilyParams& params, Domain domain) {
  return std::visit(
      [domain](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ConstantFamily>) {
          return WeightSequence::constant(p.lambda, domain);
        } else if constexpr (std::is_same_v<P, StepFamily>) {
          return WeightSequence::step(p.pos, p.neg, domain);
        } else if constexpr (std::is_same_v<P, PeriodicFamily>) {
          return WeightSequence::periodic(p.values, domain);
        } else {
          return WeightSequence::block_interleaved(p.low, p.high, p.lengths,
                                                   domain);
        }
      },
      params);
}

const HerreroBundle& HerreroOutcome::witness() const {
  if (!verified) throw ConstructionError(diagnostic);
  return bundle;
}

HerreroOutcome herrero_construction(const HerreroParams& params) {
  if (!(params.low > 0.0 && params.low < 1.0 && params.high > 1.0)) {
    throw InvalidArgument("herrero construction needs 0 < low < 1 < high");
  }
  if (params.period < 2) {
    throw InvalidArgument("herrero construction needs period >= 2");
  }
  if (params.lengths.empty()) {
    throw InvalidArgument("herrero construction needs block lengths");
  }
  params.thresholds.validate();

  const WeightSequence weights = WeightSequence::block_interleaved(
      params.low, params.high, params.lengths);
  const auto& rule = std::get<BlockInterleavedRule>(weights.rule());
  const OperatorSpec op(ShiftKind::kBilateralForward, weights);
  const OperatorSpec adj = adjoint(op);
  const IndexSet m1(params.period, {0});
  const IndexSet m2(params.period, {1});
  const std::size_t K = params.lengths.size();
  const PowerSchedule sched_fwd = block_schedule(rule, K, 0, params.period);
  const PowerSchedule sched_bwd = block_schedule(rule, K, 1, params.period);

  for (Index n : sched_fwd.powers()) {
    if (!is_power_invariant(op, m1, n)) {
      throw ConstructionError("forward schedule power " + std::to_string(n) +
                              " is not admissible for M1");
    }
  }
  for (Index n : sched_bwd.powers()) {
    if (!is_power_invariant(adj, m2, n)) {
      throw ConstructionError("backward schedule power " + std::to_string(n) +
                              " is not admissible for M2");
    }
  }

  const Index anchor_fwd = 0;
  const Index anchor_bwd = 1;
  auto run_forward = [&] {
    return eq65_forward(op, m1, anchor_fwd, sched_fwd, params.thresholds);
  };
  auto run_backward = [&] {
    return backward_condition(adj, m2, anchor_bwd, sched_bwd,
                              params.thresholds);
  };
  ConditionResult forward, backward;
  if (params.parallel) {
    auto pending = std::async(std::launch::async, run_backward);
    forward = run_forward();
    backward = pending.get();
  } else {
    forward = run_forward();
    backward = run_backward();
  }

  HerreroOutcome out{HerreroBundle{params, op, adj, m1, m2, anchor_fwd,
                                   anchor_bwd, sched_fwd, sched_bwd,
                                   std::move(forward), std::move(backward)},
                     false,
                     {}};
  const Status fs = out.bundle.forward.verdict.status;
  const Status bs = out.bundle.backward.verdict.status;
  out.verified = fs == Status::kSatisfiedAtHorizon &&
                 bs == Status::kSatisfiedAtHorizon;
  if (!out.verified) {
    out.diagnostic = std::string("self-verification failed: forward ") +
                     to_string(fs) + ", backward " + to_string(bs) +
                     " at horizon K = " + std::to_string(K);
  }
  return out;
}

Example2B paper_example_2B() {
  return {OperatorSpec(ShiftKind::kUnilateralBackward,
                       WeightSequence::constant(2.0, Domain::kUnilateral)),
          IndexSet(2, {1}, Domain::kUnilateral)};
}

}  // namespace shiftdyn
