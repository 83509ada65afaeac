#include "shiftdyn/shift_ops.hpp"

#include <cmath>
#include <string>

namespace shiftdyn {

namespace {

void require_in_domain(const OperatorSpec& op, Index m) {
  if (!in_domain(op.domain(), m)) {
    throw DomainError("index " + std::to_string(m) + " is outside the " +
                      to_string(op.kind()) + " domain");
  }
}

void require_positive_power(Index n) {
  if (n < 1) throw InvalidArgument("operator powers start at n = 1");
}

}  // namespace

double log_weight_sum(const WeightSequence& w, Index first, Index last) {
  LogAccumulator acc;
  for (Index j = first; j <= last; ++j) acc.add(w.log_at(j));
  return acc.value();
}

SparseVector apply(const OperatorSpec& op, const SparseVector& v) {
  const WeightSequence& w = op.weights();
  SparseVector out;
  for (const auto& [m, c] : v) {
    require_in_domain(op, m);
    if (op.forward()) {
      out.add(m + 1, c * w.at(m));
    } else if (op.kind() == ShiftKind::kUnilateralBackward && m == 0) {
      continue;  // B e_0 = 0
    } else {
      out.add(m - 1, c * w.at(m));
    }
  }
  return out;
}

PowerCoefficient power_product(const OperatorSpec& op, Index m, Index n) {
  require_positive_power(n);
  require_in_domain(op, m);
  const WeightSequence& w = op.weights();
  if (op.forward()) {
    return PowerCoefficient::at(m + n, {log_weight_sum(w, m, m + n - 1)});
  }
  if (op.kind() == ShiftKind::kUnilateralBackward && m < n) {
    return PowerCoefficient::annihilated();
  }
  return PowerCoefficient::at(m - n, {log_weight_sum(w, m - n + 1, m)});
}

Index right_inverse_landing(const OperatorSpec& op, Index m, Index n) {
  require_positive_power(n);
  require_in_domain(op, m);
  const Index landing = op.forward() ? m - n : m + n;
  if (!in_domain(op.domain(), landing)) {
    throw DomainError("S^" + std::to_string(n) + " e_" + std::to_string(m) +
                      " would leave N");
  }
  return landing;
}

LogMagnitude right_inverse_power(const OperatorSpec& op, Index m, Index n) {
  const Index landing = right_inverse_landing(op, m, n);
  const WeightSequence& w = op.weights();
  if (op.forward()) return {-log_weight_sum(w, landing, m - 1)};
  return {-log_weight_sum(w, m + 1, landing)};
}

SparseVector apply_power(const OperatorSpec& op, const SparseVector& v,
                         Index n) {
  SparseVector out;
  for (const auto& [m, c] : v) {
    const PowerCoefficient pc = power_product(op, m, n);
    if (pc.is_annihilated()) continue;
    out.add(pc.landing(), c * pc.magnitude());
  }
  return out;
}

SparseVector apply_right_inverse_power(const OperatorSpec& op,
                                       const SparseVector& v, Index n) {
  SparseVector out;
  for (const auto& [m, c] : v) {
    out.add(right_inverse_landing(op, m, n),
            c * right_inverse_power(op, m, n).magnitude());
  }
  return out;
}

double power_norm(const OperatorSpec& op, const SparseVector& v, Index n) {
  double sum = 0.0;
  for (const auto& [m, c] : v) {
    const double mag = c * power_product(op, m, n).magnitude();
    sum += mag * mag;
  }
  return std::sqrt(sum);
}

double right_inverse_norm(const OperatorSpec& op, const SparseVector& v,
                          Index n) {
  double sum = 0.0;
  for (const auto& [m, c] : v) {
    const double mag = c * right_inverse_power(op, m, n).magnitude();
    sum += mag * mag;
  }
  return std::sqrt(sum);
}

OperatorSpec adjoint(const OperatorSpec& op) {
  const WeightSequence& w = op.weights();
  switch (op.kind()) {
    case ShiftKind::kBilateralForward:
      return OperatorSpec(ShiftKind::kBilateralBackward, w.shifted(1));
    case ShiftKind::kBilateralBackward:
      return OperatorSpec(ShiftKind::kBilateralForward, w.shifted(-1));
    case ShiftKind::kUnilateralBackward:
      return OperatorSpec(ShiftKind::kUnilateralForward, w.shifted(-1));
    case ShiftKind::kUnilateralForward:
      return OperatorSpec(ShiftKind::kUnilateralBackward, w.shifted(1));
  }
  throw InvalidArgument("unknown shift kind");
}

DirectSumVector apply_direct_sum(const DirectSumSpec& ds,
                                 const DirectSumVector& v) {
  return {apply(ds.left, v.left), apply(ds.right, v.right)};
}

}  // namespace shiftdyn
