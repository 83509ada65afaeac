#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "shiftdyn/types.hpp"

namespace shiftdyn {

struct ConstantRule {
  double lambda = 1.0;
};

// `pos` on indices >= 0, `neg` on indices < 0.
struct StepRule {
  double pos = 1.0;
  double neg = 1.0;
};

// values[n mod p].
struct PeriodicRule {
  std::vector<double> values;
};

// Alternating blocks laid out from index 0 upward. Block 1 (and every odd
// block) carries `low`, even blocks carry `high`. Blocks past the listed
// lengths keep doubling the last listed length, so the layout is total and
// oscillates forever. Negative indices mirror the non-negative ones with the
// two values swapped: w(-1 - j) = swap(w(j)).
struct BlockInterleavedRule {
  double low = 1.0;
  double high = 1.0;
  std::vector<Index> block_lengths;
};

class WeightSequence;

// Finite overrides on top of a non-table fallback rule.
struct TableRule {
  std::map<Index, double> entries;
  std::shared_ptr<const WeightSequence> fallback;
};

struct WeightBounds {
  double inf = 0.0;
  double sup = 0.0;

  bool bounded_away() const { return inf > 0.0 && sup < HUGE_VAL; }
};

// Supremum over n >= 1 of the partial log-products starting at some index.
struct PartialSumBound {
  enum class Kind { kBounded, kUnbounded, kUnknown };
  Kind kind = Kind::kUnknown;
  double sup = 0.0;  // meaningful for kBounded only
};

/// A positive weight sequence {w_n} on Z or N.
///
/// Every rule is total on Z; the domain only restricts which indices callers
/// may query. `shift` re-indexes the rule: weight_at(n) = rule(n - shift).
/// Adjoints use it to move weights by one index without changing the rule.
class WeightSequence {
 public:
  using Rule = std::variant<ConstantRule, StepRule, PeriodicRule,
                            BlockInterleavedRule, TableRule>;

  explicit WeightSequence(Rule rule, Domain domain = Domain::kBilateral,
                          Index shift = 0);

  static WeightSequence constant(double lambda,
                                 Domain domain = Domain::kBilateral);
  static WeightSequence step(double pos, double neg,
                             Domain domain = Domain::kBilateral);
  static WeightSequence periodic(std::vector<double> values,
                                 Domain domain = Domain::kBilateral);
  static WeightSequence block_interleaved(double low, double high,
                                          std::vector<Index> block_lengths,
                                          Domain domain = Domain::kBilateral);
  static WeightSequence table(std::map<Index, double> entries,
                              WeightSequence fallback,
                              Domain domain = Domain::kBilateral);

  // Throws DomainError for indices outside the domain.
  double at(Index n) const;
  double log_at(Index n) const;

  // Rule value before the domain check, after applying the shift.
  double value_unchecked(Index n) const;

  const Rule& rule() const noexcept { return rule_; }
  Domain domain() const noexcept { return domain_; }
  Index shift() const noexcept { return shift_; }
  bool contains(Index n) const noexcept { return in_domain(domain_, n); }

  // w'(n) = w(n - delta). Constant and periodic rules absorb the shift.
  WeightSequence shifted(Index delta) const;
  WeightSequence with_domain(Domain domain) const;

  // Exact infimum and supremum over the whole domain, from rule structure.
  WeightBounds bounds() const;
  // Exact infimum and supremum over the negative indices (bilateral only).
  WeightBounds bounds_below_zero() const;

  // sup over n >= 1 of sum_{j=start}^{start+n-1} ln w(j). Bounded or
  // unbounded is decided exactly for eventually periodic rules (constant,
  // step, periodic, and tables over those); block rules report kUnknown.
  PartialSumBound partial_sum_sup(Index start) const;

  friend bool operator==(const WeightSequence& a, const WeightSequence& b);

 private:
  struct Periodicity {
    std::optional<Index> start;  // in value_unchecked index space
    Index period = 1;
  };

  double rule_value(Index rule_index) const;
  WeightBounds bounds_over(std::optional<Index> lo,
                           std::optional<Index> hi) const;
  std::optional<Periodicity> periodicity() const;

  Rule rule_;
  Domain domain_;
  Index shift_;
};

double weight_at(const WeightSequence& w, Index n);

/// First `count` block end positions (exclusive) of a block layout:
/// block k occupies [ends[k-1], ends[k]).
std::vector<Index> block_ends(const BlockInterleavedRule& rule,
                              std::size_t count);

/// Length of block `position` (0-based) in the extended layout.
Index block_length(const BlockInterleavedRule& rule, std::size_t position);

}  // namespace shiftdyn
