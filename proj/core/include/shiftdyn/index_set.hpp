#pragma once

#include <optional>
#include <set>
#include <vector>

#include "shiftdyn/types.hpp"

namespace shiftdyn {

/// A basis-spanned subspace M, identified with its index set
/// F = {m : e_m spans M}. Represented as residue classes mod p adjusted by
/// finitely many includes and excludes.
///
/// The stored includes/excludes are normalized: an include is never already
/// a residue member and an exclude always is. This makes `perp` a pure swap.
///
/// A set with no residues is degenerate (finite-dimensional, possibly zero);
/// only `perp` of a full lattice produces one.
class IndexSet {
 public:
  IndexSet(Index modulus, const std::vector<Index>& residues,
           Domain domain = Domain::kBilateral,
           const std::set<Index>& includes = {},
           const std::set<Index>& excludes = {});

  // Residues {0} mod 1.
  static IndexSet full(Domain domain = Domain::kBilateral);

  bool contains(Index m) const;
  std::vector<Index> enumerate(Index lo, Index hi) const;

  // Smallest member in [from, to], if any.
  std::optional<Index> first_member(Index from, Index to) const;
  // Member with the smallest |m| (ties go to the non-negative one), searching
  // |m| <= radius.
  std::optional<Index> nearest_to_origin(Index radius) const;

  Index modulus() const noexcept { return modulus_; }
  Domain domain() const noexcept { return domain_; }
  bool has_residue(Index r) const { return mask_[floor_mod(r, modulus_)]; }
  std::vector<Index> residues() const;
  const std::set<Index>& includes() const noexcept { return includes_; }
  const std::set<Index>& excludes() const noexcept { return excludes_; }
  bool degenerate() const noexcept { return residue_count_ == 0; }

  // Complement within the domain; represents M-perp for basis-spanned M.
  IndexSet perp() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  struct Unchecked {};
  IndexSet(Unchecked, Index modulus, std::vector<bool> mask, Domain domain,
           std::set<Index> includes, std::set<Index> excludes);
  void normalize();

  Index modulus_;
  std::vector<bool> mask_;
  std::size_t residue_count_ = 0;
  Domain domain_;
  std::set<Index> includes_;
  std::set<Index> excludes_;
};

inline IndexSet perp(const IndexSet& set) { return set.perp(); }

enum class SetRelation { kEqual, kSubset, kSuperset, kDisjoint, kOther };

const char* to_string(SetRelation relation) noexcept;

/// Exact relation of a to b, decided on residue classes plus the finitely
/// many exceptional indices.
SetRelation relate(const IndexSet& a, const IndexSet& b);

}  // namespace shiftdyn
