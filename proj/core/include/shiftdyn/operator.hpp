#pragma once

#include "shiftdyn/index_set.hpp"
#include "shiftdyn/weights.hpp"

namespace shiftdyn {

enum class ShiftKind {
  kBilateralForward,   // T e_r = w_r e_{r+1}, r in Z
  kBilateralBackward,  // B e_r = w_r e_{r-1}, r in Z
  kUnilateralForward,  // F e_n = w_n e_{n+1}, n in N
  kUnilateralBackward  // B e_0 = 0, B e_n = w_n e_{n-1}
};

const char* to_string(ShiftKind kind) noexcept;

constexpr bool is_forward(ShiftKind kind) noexcept {
  return kind == ShiftKind::kBilateralForward ||
         kind == ShiftKind::kUnilateralForward;
}

constexpr Domain domain_of(ShiftKind kind) noexcept {
  return kind == ShiftKind::kBilateralForward ||
                 kind == ShiftKind::kBilateralBackward
             ? Domain::kBilateral
             : Domain::kUnilateral;
}

/// A weighted shift. The weight domain must match the laterality.
class OperatorSpec {
 public:
  OperatorSpec(ShiftKind kind, WeightSequence weights);

  ShiftKind kind() const noexcept { return kind_; }
  const WeightSequence& weights() const noexcept { return weights_; }
  Domain domain() const noexcept { return domain_of(kind_); }
  bool forward() const noexcept { return is_forward(kind_); }

  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;

 private:
  ShiftKind kind_;
  WeightSequence weights_;
};

/// T1 (+) T2 acting on M1 (+) M2. The two copies never mix.
struct DirectSumSpec {
  OperatorSpec left;
  OperatorSpec right;
  IndexSet left_space;
  IndexSet right_space;

  DirectSumSpec(OperatorSpec left, OperatorSpec right, IndexSet left_space,
                IndexSet right_space);
};

// Throws DomainError unless the subspace lives on the operator's domain.
void require_same_domain(const OperatorSpec& op, const IndexSet& space);

}  // namespace shiftdyn
