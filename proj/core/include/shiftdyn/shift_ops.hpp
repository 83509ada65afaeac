#pragma once

#include "shiftdyn/log_magnitude.hpp"
#include "shiftdyn/operator.hpp"
#include "shiftdyn/sparse_vector.hpp"

namespace shiftdyn {

/// sum_{j=first}^{last} ln w(j), ascending in j, compensated. Empty ranges
/// (last < first) sum to 0.
double log_weight_sum(const WeightSequence& w, Index first, Index last);

/// One application of the operator, extended linearly.
SparseVector apply(const OperatorSpec& op, const SparseVector& v);

/// op^n e_m. Forward kinds: prod_{j=m}^{m+n-1} w_j at e_{m+n}. Backward
/// kinds: prod_{j=m-n+1}^{m} w_j at e_{m-n}; unilateral backward with m < n
/// is annihilated.
PowerCoefficient power_product(const OperatorSpec& op, Index m, Index n);

/// Landing index and log-coefficient of S^n e_m, where S is the right
/// inverse (T S = I). Forward kinds: S e_r = e_{r-1} / w_{r-1}. Backward
/// kinds: S e_r = e_{r+1} / w_{r+1}. Throws DomainError when S^n e_m would
/// leave N (unilateral forward with m < n).
Index right_inverse_landing(const OperatorSpec& op, Index m, Index n);
LogMagnitude right_inverse_power(const OperatorSpec& op, Index m, Index n);

SparseVector apply_power(const OperatorSpec& op, const SparseVector& v,
                         Index n);
SparseVector apply_right_inverse_power(const OperatorSpec& op,
                                       const SparseVector& v, Index n);

// Exact norms of op^n v and S^n v: distinct basis vectors land on distinct
// basis vectors, so no cancellation can occur.
double power_norm(const OperatorSpec& op, const SparseVector& v, Index n);
double right_inverse_norm(const OperatorSpec& op, const SparseVector& v,
                          Index n);

/// Hilbert adjoint. Forward and backward swap and the weights move by one
/// index so that <T e_r, e_s> = <e_r, T* e_s> holds exactly:
///   bilateral forward w    -> bilateral backward v(n) = w(n-1)
///   bilateral backward v   -> bilateral forward  w(n) = v(n+1)
///   unilateral backward w  -> unilateral forward u(n) = w(n+1)
///   unilateral forward u   -> unilateral backward w(n) = u(n-1)
OperatorSpec adjoint(const OperatorSpec& op);

DirectSumVector apply_direct_sum(const DirectSumSpec& ds,
                                 const DirectSumVector& v);

}  // namespace shiftdyn
