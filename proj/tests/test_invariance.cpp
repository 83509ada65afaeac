#include <doctest.h>

#include <random>

#include "shiftdyn/invariance.hpp"
#include "shiftdyn/shift_ops.hpp"
#include "support/oracles.hpp"

using namespace shiftdyn;

namespace {

OperatorSpec make(ShiftKind kind, double lambda = 2.0) {
  return OperatorSpec(kind, WeightSequence::constant(lambda, domain_of(kind)));
}

}  // namespace

TEST_CASE("invariance examples") {
  const OperatorSpec t = make(ShiftKind::kBilateralForward);
  const IndexSet evens(2, {0});
  CHECK(is_power_invariant(t, evens, 2));
  CHECK_FALSE(is_power_invariant(t, evens, 1));

  const OperatorSpec b = make(ShiftKind::kUnilateralBackward);
  CHECK(is_power_invariant(b, IndexSet(2, {1}, Domain::kUnilateral), 2));

  const IndexSet f01(3, {0, 1});
  CHECK(is_power_invariant(t, f01, 3));
  CHECK_FALSE(is_power_invariant(t, f01, 1));
  for (Index n = 1; n <= 12; ++n) {
    CHECK(is_power_invariant(t, f01, n) ==
          oracle::invariant(t.kind(), f01, n, -100, 100));
  }
  CHECK_THROWS_AS(is_power_invariant(t, IndexSet::full(Domain::kUnilateral), 1),
                  DomainError);
}

TEST_CASE("exceptions can break or keep invariance") {
  const OperatorSpec t = make(ShiftKind::kBilateralForward);
  // Evens plus 3: 3 + 2 = 5 is not a member.
  CHECK_FALSE(is_power_invariant(t, IndexSet(2, {0}, Domain::kBilateral, {3}), 2));
  // Evens without 4: 2 + 2 lands on the hole.
  CHECK_FALSE(
      is_power_invariant(t, IndexSet(2, {0}, Domain::kBilateral, {}, {4}), 2));
  // Unilateral backward: images that vanish are harmless.
  const OperatorSpec b = make(ShiftKind::kUnilateralBackward);
  const IndexSet odds_plus_zero(2, {1}, Domain::kUnilateral, {0});
  CHECK(is_power_invariant(b, odds_plus_zero, 2) ==
        oracle::invariant(b.kind(), odds_plus_zero, 2, 0, 200));
}

TEST_CASE("residue decision agrees with brute force") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const ShiftKind kind = oracle::random_kind(rng);
    const Domain d = domain_of(kind);
    const IndexSet F = oracle::random_set(rng, 12, d, 5, 30).build();
    const OperatorSpec op = make(kind);
    for (Index n = 1; n <= 20; ++n) {
      REQUIRE(is_power_invariant(op, F, n) ==
              oracle::invariant(kind, F, n, d == Domain::kBilateral ? -200 : 0,
                                200));
    }
  }
}

TEST_CASE("admissible powers") {
  const OperatorSpec t = make(ShiftKind::kBilateralForward);
  const auto full = admissible_powers(t, IndexSet::full(), 6);
  CHECK(full.powers == std::vector<Index>{1, 2, 3, 4, 5, 6});
  CHECK(full.stride == Index{1});
  const auto evens = admissible_powers(t, IndexSet(2, {0}), 9);
  CHECK(evens.powers == std::vector<Index>{2, 4, 6, 8});
  CHECK(evens.stride == Index{2});
  const auto f01 = admissible_powers(t, IndexSet(3, {0, 1}), 10);
  CHECK(f01.powers == std::vector<Index>{3, 6, 9});
  CHECK(f01.stride == Index{3});
  const auto none = admissible_powers(t, IndexSet(2, {0}, Domain::kBilateral, {3}), 10);
  CHECK(none.powers.empty());
  CHECK_FALSE(none.stride);
  CHECK_THROWS_AS(require_admissible(t, IndexSet(2, {0}),
                                     std::vector<Index>{2, 3}),
                  PreconditionError);
}

TEST_CASE("admissible powers form a semigroup") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const ShiftKind kind = oracle::random_kind(rng);
    const IndexSet F = oracle::random_set(rng, 12, domain_of(kind), 4, 20).build();
    const OperatorSpec op = make(kind);
    const auto adm = admissible_powers(op, F, 30).powers;
    for (Index a : adm) {
      for (Index b : adm) CHECK(is_power_invariant(op, F, a + b));
    }
  }
}

TEST_CASE("perp") {
  const IndexSet evens(2, {0});
  CHECK(perp(evens) == IndexSet(2, {1}));
  CHECK(perp(IndexSet::full()).degenerate());

  const IndexSet odd_plus_four(2, {1}, Domain::kBilateral, {4});
  const IndexSet p = perp(odd_plus_four);
  CHECK(p.excludes() == std::set<Index>{4});
  for (Index m = -50; m <= 50; ++m) {
    CHECK(p.contains(m) == !odd_plus_four.contains(m));
  }

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Domain d = trial % 2 ? Domain::kBilateral : Domain::kUnilateral;
    const IndexSet F = oracle::random_set(rng, 12, d, 6, 40).build();
    const IndexSet pp = perp(perp(F));
    for (Index m = d == Domain::kBilateral ? -1000 : 0; m <= 1000; ++m) {
      REQUIRE(pp.contains(m) == F.contains(m));
      REQUIRE(perp(F).contains(m) == !F.contains(m));
    }
  }
}

TEST_CASE("set relations") {
  const IndexSet evens(2, {0});
  CHECK(relate(evens, IndexSet(4, {0, 2})) == SetRelation::kEqual);
  CHECK(relate(IndexSet(4, {0}), evens) == SetRelation::kSubset);
  CHECK(relate(evens, IndexSet(4, {0})) == SetRelation::kSuperset);
  CHECK(relate(evens, perp(evens)) == SetRelation::kDisjoint);
  CHECK(relate(evens, IndexSet(3, {0})) == SetRelation::kOther);
  CHECK(relate(evens, IndexSet(2, {0}, Domain::kBilateral, {}, {8})) ==
        SetRelation::kSuperset);
}

TEST_CASE("invariance is dual under adjoint and perp") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const ShiftKind kind = oracle::random_kind(rng);
    const OperatorSpec op(kind, oracle::random_weights(rng, domain_of(kind)));
    const IndexSet F = oracle::random_set(rng, 12, domain_of(kind), 4, 100).build();
    for (Index n = 1; n <= 32; ++n) {
      REQUIRE(is_power_invariant(op, F, n) ==
              is_power_invariant(adjoint(op), perp(F), n));
    }
  }
}
