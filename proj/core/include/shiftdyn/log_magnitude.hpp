#pragma once

#include <cmath>

#include "shiftdyn/types.hpp"

namespace shiftdyn {

/// Natural logarithm of a positive magnitude. Adding two LogMagnitudes
/// multiplies the magnitudes they stand for.
struct LogMagnitude {
  double log_value = 0.0;

  double magnitude() const { return std::exp(log_value); }

  friend LogMagnitude operator+(LogMagnitude a, LogMagnitude b) {
    return {a.log_value + b.log_value};
  }
  friend LogMagnitude operator-(LogMagnitude a) { return {-a.log_value}; }
  friend bool operator==(LogMagnitude a, LogMagnitude b) = default;
};

/// Compensated (Neumaier) summation of log terms. Feeding the same terms in
/// the same order always yields bit-identical sums, so a running accumulator
/// and a fresh one over the same range agree exactly.
class LogAccumulator {
 public:
  void add(double term) {
    const double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term)) {
      compensation_ += (sum_ - t) + term;
    } else {
      compensation_ += (term - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Result of applying op^n to a basis vector: either a coefficient of the
/// landing basis vector, or the zero vector (unilateral backward shifts send
/// e_m to 0 once n > m). The annihilated case carries no log value.
class PowerCoefficient {
 public:
  static PowerCoefficient annihilated() { return PowerCoefficient(); }
  static PowerCoefficient at(Index landing, LogMagnitude log) {
    PowerCoefficient c;
    c.annihilated_ = false;
    c.landing_ = landing;
    c.log_ = log;
    return c;
  }

  bool is_annihilated() const noexcept { return annihilated_; }

  // Throws PreconditionError when annihilated.
  Index landing() const;
  LogMagnitude log() const;

  // 0 when annihilated.
  double magnitude() const { return annihilated_ ? 0.0 : log_.magnitude(); }

 private:
  PowerCoefficient() = default;
  bool annihilated_ = true;
  Index landing_ = 0;
  LogMagnitude log_{};
};

}  // namespace shiftdyn
