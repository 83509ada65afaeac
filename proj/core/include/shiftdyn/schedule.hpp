#pragma once

#include <optional>
#include <span>
#include <vector>

#include "shiftdyn/types.hpp"

namespace shiftdyn {

/// Strictly increasing powers {n_k} along which invariance and the limit
/// conditions are evaluated. Never empty.
class PowerSchedule {
 public:
  // n_k = stride * k for k = 1..count.
  static PowerSchedule arithmetic(Index stride, Index count);
  static PowerSchedule explicit_powers(std::vector<Index> powers);

  std::span<const Index> powers() const noexcept { return powers_; }
  std::size_t size() const noexcept { return powers_.size(); }
  Index operator[](std::size_t k) const { return powers_[k]; }
  Index back() const { return powers_.back(); }

  // Set when built as an arithmetic progression.
  std::optional<Index> stride() const noexcept { return stride_; }

  friend bool operator==(const PowerSchedule&, const PowerSchedule&) = default;

 private:
  PowerSchedule(std::vector<Index> powers, std::optional<Index> stride);

  std::vector<Index> powers_;
  std::optional<Index> stride_;
};

}  // namespace shiftdyn
