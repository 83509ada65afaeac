#include "shiftdyn/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "shiftdyn/log_magnitude.hpp"

namespace shiftdyn {

namespace {

constexpr Index kMaxIndex = std::numeric_limits<Index>::max();

// Pre-periodic spans longer than this are reported as unknown rather than
// summed term by term.
constexpr Index kMaxPeriodicScan = 10'000'000;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(what) +
                          " must be a positive finite weight, got " +
                          std::to_string(value));
  }
}

void validate(const WeightSequence::Rule& rule) {
  std::visit(
      [](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, ConstantRule>) {
          require_positive(r.lambda, "constant lambda");
        } else if constexpr (std::is_same_v<R, StepRule>) {
          require_positive(r.pos, "step pos");
          require_positive(r.neg, "step neg");
        } else if constexpr (std::is_same_v<R, PeriodicRule>) {
          if (r.values.empty()) {
            throw InvalidArgument("periodic rule needs at least one value");
          }
          for (double v : r.values) require_positive(v, "periodic value");
        } else if constexpr (std::is_same_v<R, BlockInterleavedRule>) {
          require_positive(r.low, "block low");
          require_positive(r.high, "block high");
          if (r.block_lengths.empty()) {
            throw InvalidArgument("block_interleaved needs block lengths");
          }
          Index prev = 0;
          for (Index len : r.block_lengths) {
            if (len <= prev) {
              throw InvalidArgument(
                  "block lengths must be positive and strictly increasing");
            }
            prev = len;
          }
        } else {
          if (!r.fallback) {
            throw InvalidArgument("table rule needs a fallback rule");
          }
          if (std::holds_alternative<TableRule>(r.fallback->rule())) {
            throw InvalidArgument("table fallback must not itself be a table");
          }
          for (const auto& [index, value] : r.entries) {
            require_positive(value, "table entry");
          }
        }
      },
      rule);
}

Index floor_mod_size(Index value, std::size_t size) {
  return floor_mod(value, static_cast<Index>(size));
}

}  // namespace

const char* to_string(Domain domain) noexcept {
  return domain == Domain::kBilateral ? "bilateral" : "unilateral";
}

Index PowerCoefficient::landing() const {
  if (annihilated_) throw PreconditionError("power image is the zero vector");
  return landing_;
}

LogMagnitude PowerCoefficient::log() const {
  if (annihilated_) throw PreconditionError("power image is the zero vector");
  return log_;
}

Index block_length(const BlockInterleavedRule& rule, std::size_t position) {
  const auto& lengths = rule.block_lengths;
  if (position < lengths.size()) return lengths[position];
  Index len = lengths.back();
  for (std::size_t extra = lengths.size(); extra <= position; ++extra) {
    if (len > kMaxIndex / 2) return kMaxIndex;
    len *= 2;
  }
  return len;
}

std::vector<Index> block_ends(const BlockInterleavedRule& rule,
                              std::size_t count) {
  std::vector<Index> ends;
  ends.reserve(count);
  Index end = 0;
  for (std::size_t pos = 0; pos < count; ++pos) {
    const Index len = block_length(rule, pos);
    if (len > kMaxIndex - end) {
      throw InvalidArgument("block layout exceeds the index range");
    }
    end += len;
    ends.push_back(end);
  }
  return ends;
}

WeightSequence::WeightSequence(Rule rule, Domain domain, Index shift)
    : rule_(std::move(rule)), domain_(domain), shift_(shift) {
  validate(rule_);
}

WeightSequence WeightSequence::constant(double lambda, Domain domain) {
  return WeightSequence(ConstantRule{lambda}, domain);
}

WeightSequence WeightSequence::step(double pos, double neg, Domain domain) {
  return WeightSequence(StepRule{pos, neg}, domain);
}

WeightSequence WeightSequence::periodic(std::vector<double> values,
                                        Domain domain) {
  return WeightSequence(PeriodicRule{std::move(values)}, domain);
}

WeightSequence WeightSequence::block_interleaved(
    double low, double high, std::vector<Index> block_lengths, Domain domain) {
  return WeightSequence(
      BlockInterleavedRule{low, high, std::move(block_lengths)}, domain);
}

WeightSequence WeightSequence::table(std::map<Index, double> entries,
                                     WeightSequence fallback, Domain domain) {
  return WeightSequence(
      TableRule{std::move(entries),
                std::make_shared<const WeightSequence>(std::move(fallback))},
      domain);
}

double WeightSequence::rule_value(Index j) const {
  return std::visit(
      [j](const auto& r) -> double {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, ConstantRule>) {
          return r.lambda;
        } else if constexpr (std::is_same_v<R, StepRule>) {
          return j >= 0 ? r.pos : r.neg;
        } else if constexpr (std::is_same_v<R, PeriodicRule>) {
          return r.values[static_cast<std::size_t>(
              floor_mod_size(j, r.values.size()))];
        } else if constexpr (std::is_same_v<R, BlockInterleavedRule>) {
          const bool mirrored = j < 0;
          const Index k = mirrored ? -1 - j : j;
          Index end = 0;
          std::size_t pos = 0;
          for (;; ++pos) {
            const Index len = block_length(r, pos);
            if (len > kMaxIndex - end || k < end + len) break;
            end += len;
          }
          const bool low = (pos % 2 == 0) != mirrored;
          return low ? r.low : r.high;
        } else {
          if (auto it = r.entries.find(j); it != r.entries.end()) {
            return it->second;
          }
          return r.fallback->value_unchecked(j);
        }
      },
      rule_);
}

double WeightSequence::value_unchecked(Index n) const {
  return rule_value(n - shift_);
}

double WeightSequence::at(Index n) const {
  if (!contains(n)) {
    throw DomainError("index " + std::to_string(n) +
                      " is outside the unilateral weight domain");
  }
  return value_unchecked(n);
}

double WeightSequence::log_at(Index n) const { return std::log(at(n)); }

double weight_at(const WeightSequence& w, Index n) { return w.at(n); }

WeightSequence WeightSequence::shifted(Index delta) const {
  if (std::holds_alternative<ConstantRule>(rule_)) {
    return WeightSequence(rule_, domain_, 0);
  }
  if (const auto* p = std::get_if<PeriodicRule>(&rule_)) {
    // Rotate the values so the shift folds into the rule itself.
    const std::size_t size = p->values.size();
    const Index total = shift_ + delta;
    std::vector<double> rotated(size);
    for (std::size_t r = 0; r < size; ++r) {
      rotated[r] = p->values[static_cast<std::size_t>(
          floor_mod_size(static_cast<Index>(r) - total, size))];
    }
    return WeightSequence(PeriodicRule{std::move(rotated)}, domain_, 0);
  }
  return WeightSequence(rule_, domain_, shift_ + delta);
}

WeightSequence WeightSequence::with_domain(Domain domain) const {
  return WeightSequence(rule_, domain, shift_);
}

WeightBounds WeightSequence::bounds_over(std::optional<Index> lo,
                                         std::optional<Index> hi) const {
  // Callers pass rule-index intervals with at least one infinite side.
  return std::visit(
      [&](const auto& r) -> WeightBounds {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, ConstantRule>) {
          return {r.lambda, r.lambda};
        } else if constexpr (std::is_same_v<R, StepRule>) {
          const bool has_neg = !lo || *lo < 0;
          const bool has_pos = !hi || *hi >= 0;
          WeightBounds b{HUGE_VAL, 0.0};
          if (has_neg) b = {std::min(b.inf, r.neg), std::max(b.sup, r.neg)};
          if (has_pos) b = {std::min(b.inf, r.pos), std::max(b.sup, r.pos)};
          return b;
        } else if constexpr (std::is_same_v<R, PeriodicRule>) {
          const auto [mn, mx] =
              std::minmax_element(r.values.begin(), r.values.end());
          return {*mn, *mx};
        } else if constexpr (std::is_same_v<R, BlockInterleavedRule>) {
          return {std::min(r.low, r.high), std::max(r.low, r.high)};
        } else {
          const Index fs = r.fallback->shift();
          auto shift_opt = [fs](std::optional<Index> v) {
            return v ? std::optional<Index>(*v - fs) : std::nullopt;
          };
          WeightBounds b = r.fallback->bounds_over(shift_opt(lo), shift_opt(hi));
          for (const auto& [index, value] : r.entries) {
            if ((lo && index < *lo) || (hi && index > *hi)) continue;
            b.inf = std::min(b.inf, value);
            b.sup = std::max(b.sup, value);
          }
          return b;
        }
      },
      rule_);
}

WeightBounds WeightSequence::bounds() const {
  if (domain_ == Domain::kBilateral) return bounds_over(std::nullopt, std::nullopt);
  return bounds_over(-shift_, std::nullopt);
}

WeightBounds WeightSequence::bounds_below_zero() const {
  if (domain_ != Domain::kBilateral) {
    throw DomainError("a unilateral weight sequence has no negative indices");
  }
  return bounds_over(std::nullopt, -1 - shift_);
}

std::optional<WeightSequence::Periodicity> WeightSequence::periodicity() const {
  std::optional<Periodicity> in_rule_space = std::visit(
      [](const auto& r) -> std::optional<Periodicity> {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, ConstantRule>) {
          return Periodicity{std::nullopt, 1};
        } else if constexpr (std::is_same_v<R, StepRule>) {
          return Periodicity{Index{0}, 1};
        } else if constexpr (std::is_same_v<R, PeriodicRule>) {
          return Periodicity{std::nullopt, static_cast<Index>(r.values.size())};
        } else if constexpr (std::is_same_v<R, BlockInterleavedRule>) {
          return std::nullopt;
        } else {
          auto inner = r.fallback->periodicity();
          if (!inner) return std::nullopt;
          if (!r.entries.empty()) {
            const Index past_entries = r.entries.rbegin()->first + 1;
            inner->start =
                inner->start ? std::max(*inner->start, past_entries) : past_entries;
          }
          return inner;
        }
      },
      rule_);
  if (in_rule_space && in_rule_space->start) *in_rule_space->start += shift_;
  return in_rule_space;
}

PartialSumBound WeightSequence::partial_sum_sup(Index start) const {
  if (!contains(start)) {
    throw DomainError("partial sums must start inside the weight domain");
  }
  const auto per = periodicity();
  if (!per) return {PartialSumBound::Kind::kUnknown, 0.0};

  const Index periodic_from =
      per->start ? std::max(start, *per->start) : start;
  const Index scan_end = periodic_from + per->period;  // exclusive
  if (scan_end - start > kMaxPeriodicScan) {
    return {PartialSumBound::Kind::kUnknown, 0.0};
  }

  LogAccumulator acc;
  double best = -HUGE_VAL;
  for (Index j = start; j < scan_end; ++j) {
    acc.add(std::log(value_unchecked(j)));
    best = std::max(best, acc.value());
  }
  LogAccumulator period_sum;
  double magnitude = 0.0;
  for (Index j = periodic_from; j < scan_end; ++j) {
    const double term = std::log(value_unchecked(j));
    period_sum.add(term);
    magnitude += std::fabs(term);
  }
  // One full period past the pre-periodic part already attains the sup once
  // each further period adds a non-positive amount. Rounding noise on an
  // exactly cancelling period is treated as zero.
  if (period_sum.value() > 1e-12 * std::max(1.0, magnitude)) {
    return {PartialSumBound::Kind::kUnbounded, 0.0};
  }
  return {PartialSumBound::Kind::kBounded, best};
}

namespace {

bool rules_equal(const WeightSequence::Rule& a, const WeightSequence::Rule& b);

}  // namespace

bool operator==(const WeightSequence& a, const WeightSequence& b) {
  return a.domain_ == b.domain_ && a.shift_ == b.shift_ &&
         rules_equal(a.rule_, b.rule_);
}

namespace {

bool rules_equal(const WeightSequence::Rule& a, const WeightSequence::Rule& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&b](const auto& ra) -> bool {
        using R = std::decay_t<decltype(ra)>;
        const auto& rb = std::get<R>(b);
        if constexpr (std::is_same_v<R, ConstantRule>) {
          return ra.lambda == rb.lambda;
        } else if constexpr (std::is_same_v<R, StepRule>) {
          return ra.pos == rb.pos && ra.neg == rb.neg;
        } else if constexpr (std::is_same_v<R, PeriodicRule>) {
          return ra.values == rb.values;
        } else if constexpr (std::is_same_v<R, BlockInterleavedRule>) {
          return ra.low == rb.low && ra.high == rb.high &&
                 ra.block_lengths == rb.block_lengths;
        } else {
          return ra.entries == rb.entries && *ra.fallback == *rb.fallback;
        }
      },
      a);
}

}  // namespace

}  // namespace shiftdyn
