#include "shiftdyn/schedule.hpp"

#include <string>

namespace shiftdyn {

PowerSchedule::PowerSchedule(std::vector<Index> powers,
                             std::optional<Index> stride)
    : powers_(std::move(powers)), stride_(stride) {
  if (powers_.empty()) throw InvalidArgument("power schedule is empty");
  Index prev = 0;
  for (Index n : powers_) {
    if (n <= prev) {
      throw InvalidArgument(
          "power schedule must be strictly increasing positive integers (saw " +
          std::to_string(n) + " after " + std::to_string(prev) + ")");
    }
    prev = n;
  }
}

PowerSchedule PowerSchedule::arithmetic(Index stride, Index count) {
  if (stride < 1 || count < 1) {
    throw InvalidArgument("arithmetic schedule needs stride >= 1, count >= 1");
  }
  std::vector<Index> powers;
  powers.reserve(static_cast<std::size_t>(count));
  for (Index k = 1; k <= count; ++k) powers.push_back(stride * k);
  return PowerSchedule(std::move(powers), stride);
}

PowerSchedule PowerSchedule::explicit_powers(std::vector<Index> powers) {
  return PowerSchedule(std::move(powers), std::nullopt);
}

}  // namespace shiftdyn
