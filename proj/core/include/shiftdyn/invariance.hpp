#pragma once

#include <optional>
#include <span>
#include <vector>

#include "shiftdyn/operator.hpp"

namespace shiftdyn {

/// op^n M subset of M for the subspace spanned by F. Decided exactly on the
/// residue representation: the residue classes must be closed under
/// translation by +-n, then the finitely many includes and excludes are
/// checked one by one. Images annihilated by a unilateral backward shift are
/// the zero vector and therefore lie in M.
bool is_power_invariant(const OperatorSpec& op, const IndexSet& F, Index n);

struct AdmissiblePowers {
  std::vector<Index> powers;
  // Set when powers == {g, 2g, ..., <= n_max}.
  std::optional<Index> stride;
};

AdmissiblePowers admissible_powers(const OperatorSpec& op, const IndexSet& F,
                                   Index n_max);

// Throws PreconditionError naming the first power that breaks invariance.
void require_admissible(const OperatorSpec& op, const IndexSet& F,
                        std::span<const Index> powers);

}  // namespace shiftdyn
