#include "shiftdyn/index_set.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace shiftdyn {

namespace {

constexpr Index kMaxModulus = 1'000'000;

}  // namespace

IndexSet::IndexSet(Index modulus, const std::vector<Index>& residues,
                   Domain domain, const std::set<Index>& includes,
                   const std::set<Index>& excludes)
    : modulus_(modulus), domain_(domain), includes_(includes),
      excludes_(excludes) {
  if (modulus < 1 || modulus > kMaxModulus) {
    throw InvalidArgument("index set modulus must lie in [1, 1e6], got " +
                          std::to_string(modulus));
  }
  if (residues.empty()) {
    throw InvalidArgument("index set needs at least one residue class");
  }
  mask_.assign(static_cast<std::size_t>(modulus), false);
  for (Index r : residues) {
    if (r < 0 || r >= modulus) {
      throw InvalidArgument("residue " + std::to_string(r) +
                            " is outside [0, modulus - 1]");
    }
    mask_[static_cast<std::size_t>(r)] = true;
  }
  for (Index m : includes_) {
    if (excludes_.count(m)) {
      throw InvalidArgument("index " + std::to_string(m) +
                            " is both included and excluded");
    }
  }
  for (const auto* finite : {&includes_, &excludes_}) {
    for (Index m : *finite) {
      if (!in_domain(domain_, m)) {
        throw DomainError("index " + std::to_string(m) +
                          " lies outside the unilateral domain");
      }
    }
  }
  normalize();
}

IndexSet::IndexSet(Unchecked, Index modulus, std::vector<bool> mask,
                   Domain domain, std::set<Index> includes,
                   std::set<Index> excludes)
    : modulus_(modulus), mask_(std::move(mask)), domain_(domain),
      includes_(std::move(includes)), excludes_(std::move(excludes)) {
  normalize();
}

void IndexSet::normalize() {
  residue_count_ = static_cast<std::size_t>(
      std::count(mask_.begin(), mask_.end(), true));
  std::erase_if(includes_, [this](Index m) { return has_residue(m); });
  std::erase_if(excludes_, [this](Index m) { return !has_residue(m); });
}

IndexSet IndexSet::full(Domain domain) { return IndexSet(1, {0}, domain); }

bool IndexSet::contains(Index m) const {
  if (!in_domain(domain_, m)) return false;
  if (includes_.count(m)) return true;
  if (excludes_.count(m)) return false;
  return has_residue(m);
}

std::vector<Index> IndexSet::enumerate(Index lo, Index hi) const {
  std::vector<Index> members;
  for (Index m = lo; m <= hi; ++m) {
    if (contains(m)) members.push_back(m);
  }
  return members;
}

std::optional<Index> IndexSet::first_member(Index from, Index to) const {
  for (Index m = from; m <= to; ++m) {
    if (contains(m)) return m;
  }
  return std::nullopt;
}

std::optional<Index> IndexSet::nearest_to_origin(Index radius) const {
  for (Index r = 0; r <= radius; ++r) {
    if (contains(r)) return r;
    if (r > 0 && contains(-r)) return -r;
  }
  return std::nullopt;
}

std::vector<Index> IndexSet::residues() const {
  std::vector<Index> out;
  for (Index r = 0; r < modulus_; ++r) {
    if (mask_[static_cast<std::size_t>(r)]) out.push_back(r);
  }
  return out;
}

IndexSet IndexSet::perp() const {
  std::vector<bool> complement(mask_.size());
  for (std::size_t r = 0; r < mask_.size(); ++r) complement[r] = !mask_[r];
  return IndexSet(Unchecked{}, modulus_, std::move(complement), domain_,
                  excludes_, includes_);
}

const char* to_string(SetRelation relation) noexcept {
  switch (relation) {
    case SetRelation::kEqual: return "equal";
    case SetRelation::kSubset: return "subset";
    case SetRelation::kSuperset: return "superset";
    case SetRelation::kDisjoint: return "disjoint";
    case SetRelation::kOther: return "other";
  }
  return "other";
}

SetRelation relate(const IndexSet& a, const IndexSet& b) {
  if (a.domain() != b.domain()) {
    throw DomainError("cannot relate index sets over different domains");
  }
  const Index lcm = std::lcm(a.modulus(), b.modulus());
  if (lcm > kMaxModulus) {
    throw InvalidArgument("combined modulus too large to compare");
  }
  bool a_in_b = true;
  bool b_in_a = true;
  bool disjoint = true;
  for (Index r = 0; r < lcm; ++r) {
    const bool ra = a.has_residue(r);
    const bool rb = b.has_residue(r);
    if (ra && !rb) a_in_b = false;
    if (rb && !ra) b_in_a = false;
    if (ra && rb) disjoint = false;
  }
  // Off the exceptional indices, membership is decided by residues alone.
  std::set<Index> exceptional;
  for (const IndexSet* s : {&a, &b}) {
    exceptional.insert(s->includes().begin(), s->includes().end());
    exceptional.insert(s->excludes().begin(), s->excludes().end());
  }
  for (Index m : exceptional) {
    const bool ia = a.contains(m);
    const bool ib = b.contains(m);
    if (ia && !ib) a_in_b = false;
    if (ib && !ia) b_in_a = false;
    if (ia && ib) disjoint = false;
  }
  if (a_in_b && b_in_a) return SetRelation::kEqual;
  if (a_in_b) return SetRelation::kSubset;
  if (b_in_a) return SetRelation::kSuperset;
  if (disjoint) return SetRelation::kDisjoint;
  return SetRelation::kOther;
}

}  // namespace shiftdyn
