#include "shiftdyn/invariance.hpp"

#include <string>

namespace shiftdyn {

bool is_power_invariant(const OperatorSpec& op, const IndexSet& F, Index n) {
  require_same_domain(op, F);
  if (n < 1) throw InvalidArgument("operator powers start at n = 1");

  const Index d = op.forward() ? n : -n;
  const Domain domain = F.domain();

  if (!F.degenerate()) {
    for (Index r : F.residues()) {
      if (!F.has_residue(r + d)) return false;
    }
  }
  // Outside the domain only happens for unilateral backward: annihilated.
  auto image_inside = [&](Index m) {
    const Index t = m + d;
    return !in_domain(domain, t) || F.contains(t);
  };
  for (Index m : F.includes()) {
    if (!image_inside(m)) return false;
  }
  // A residue member mapping onto an excluded index.
  for (Index e : F.excludes()) {
    if (F.contains(e - d)) return false;
  }
  return true;
}

AdmissiblePowers admissible_powers(const OperatorSpec& op, const IndexSet& F,
                                   Index n_max) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  AdmissiblePowers result;
  for (Index n = 1; n <= n_max; ++n) {
    if (is_power_invariant(op, F, n)) result.powers.push_back(n);
  }
  if (!result.powers.empty()) {
    const Index g = result.powers.front();
    bool progression = static_cast<Index>(result.powers.size()) == n_max / g;
    for (std::size_t k = 0; progression && k < result.powers.size(); ++k) {
      progression = result.powers[k] == g * static_cast<Index>(k + 1);
    }
    if (progression) result.stride = g;
  }
  return result;
}

void require_admissible(const OperatorSpec& op, const IndexSet& F,
                        std::span<const Index> powers) {
  for (Index n : powers) {
    if (!is_power_invariant(op, F, n)) {
      throw PreconditionError("power n = " + std::to_string(n) +
                              " does not leave the subspace invariant");
    }
  }
}

}  // namespace shiftdyn
