#include "shiftdyn/operator.hpp"

#include <string>

namespace shiftdyn {

const char* to_string(ShiftKind kind) noexcept {
  switch (kind) {
    case ShiftKind::kBilateralForward: return "bilateral-forward";
    case ShiftKind::kBilateralBackward: return "bilateral-backward";
    case ShiftKind::kUnilateralForward: return "unilateral-forward";
    case ShiftKind::kUnilateralBackward: return "unilateral-backward";
  }
  return "unknown";
}

OperatorSpec::OperatorSpec(ShiftKind kind, WeightSequence weights)
    : kind_(kind), weights_(std::move(weights)) {
  if (weights_.domain() != domain_of(kind_)) {
    throw DomainError(std::string(to_string(kind_)) + " needs " +
                      to_string(domain_of(kind_)) + " weights");
  }
}

DirectSumSpec::DirectSumSpec(OperatorSpec l, OperatorSpec r, IndexSet ls,
                             IndexSet rs)
    : left(std::move(l)), right(std::move(r)), left_space(std::move(ls)),
      right_space(std::move(rs)) {
  require_same_domain(left, left_space);
  require_same_domain(right, right_space);
}

void require_same_domain(const OperatorSpec& op, const IndexSet& space) {
  if (op.domain() != space.domain()) {
    throw DomainError(std::string("subspace domain ") +
                      to_string(space.domain()) + " does not match " +
                      to_string(op.kind()));
  }
}

}  // namespace shiftdyn
