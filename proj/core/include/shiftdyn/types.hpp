#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shiftdyn {

/// Index of a canonical basis vector e_n.
using Index = std::int64_t;

/// Index domain of a sequence space: l2(Z) or l2(N).
enum class Domain { kBilateral, kUnilateral };

inline bool in_domain(Domain domain, Index n) noexcept {
  return domain == Domain::kBilateral || n >= 0;
}

/// Mathematical modulo: the result always lies in [0, modulus - 1].
inline Index floor_mod(Index value, Index modulus) noexcept {
  const Index r = value % modulus;
  return r < 0 ? r + modulus : r;
}

const char* to_string(Domain domain) noexcept;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Index outside a domain, or operator/subspace laterality mismatch.
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A hypothesis an evaluator requires before it can run (membership,
// admissibility of a power, operator kind).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A schedule ran out before a construction could finish.
class HorizonError : public Error {
 public:
  using Error::Error;
};

}  // namespace shiftdyn
