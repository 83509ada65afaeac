#include <doctest.h>

#include <cmath>
#include <random>

#include "shiftdyn/index_set.hpp"
#include "shiftdyn/log_magnitude.hpp"
#include "shiftdyn/schedule.hpp"
#include "shiftdyn/sparse_vector.hpp"
#include "shiftdyn/verdict.hpp"
#include "shiftdyn/weights.hpp"
#include "support/oracles.hpp"

using namespace shiftdyn;

TEST_CASE("weight rules evaluate their definitions") {
  CHECK(weight_at(WeightSequence::constant(2.0), -5) == 2.0);

  const auto step = WeightSequence::step(0.5, 2.0);
  CHECK(weight_at(step, -1) == 2.0);
  CHECK(weight_at(step, 0) == 0.5);

  const auto periodic = WeightSequence::periodic({1.0, 2.0, 3.0});
  CHECK(weight_at(periodic, 4) == 2.0);
  CHECK(weight_at(periodic, -1) == 3.0);

  const auto table = WeightSequence::table({{3, 7.0}}, step);
  CHECK(weight_at(table, 3) == 7.0);
  CHECK(weight_at(table, 4) == 0.5);
  CHECK(weight_at(table, -4) == 2.0);
}

TEST_CASE("unilateral weights reject negative indices") {
  const auto w = WeightSequence::constant(2.0, Domain::kUnilateral);
  CHECK(w.at(0) == 2.0);
  CHECK_THROWS_AS(w.at(-1), DomainError);
}

TEST_CASE("invalid weight parameters are rejected") {
  CHECK_THROWS_AS(WeightSequence::constant(0.0), InvalidArgument);
  CHECK_THROWS_AS(WeightSequence::constant(-1.0), InvalidArgument);
  CHECK_THROWS_AS(WeightSequence::step(1.0, NAN), InvalidArgument);
  CHECK_THROWS_AS(WeightSequence::periodic({}), InvalidArgument);
  CHECK_THROWS_AS(WeightSequence::block_interleaved(0.5, 2.0, {2, 2}),
                  InvalidArgument);
  const auto t = WeightSequence::table({{0, 2.0}}, WeightSequence::constant(1));
  CHECK_THROWS_AS(WeightSequence::table({{0, 2.0}}, t), InvalidArgument);
  CHECK_THROWS_AS(WeightSequence::table({{0, 0.0}}, WeightSequence::constant(1)),
                  InvalidArgument);
}

TEST_CASE("block layout matches an explicit expansion") {
  const std::vector<Index> lengths{1, 2, 4, 8};
  const auto w = WeightSequence::block_interleaved(0.5, 2.0, lengths);
  for (Index n = -400; n <= 400; ++n) {
    CHECK(w.at(n) == oracle::block_weight(0.5, 2.0, lengths, n));
  }
  // Widening swings: partial log sums at block ends alternate in sign with
  // growing magnitude.
  const auto& rule = std::get<BlockInterleavedRule>(w.rule());
  const auto ends = block_ends(rule, 8);
  double prev_abs = 0.0;
  for (std::size_t k = 0; k < ends.size(); ++k) {
    long double s = 0.0L;
    for (Index j = 0; j < ends[k]; ++j) s += std::log((long double)w.at(j));
    CHECK(((k % 2 == 0) ? s < 0 : s > 0));
    if (k % 2 == 0) {
      CHECK(std::fabs((double)s) > prev_abs);
      prev_abs = std::fabs((double)s);
    }
  }
}

TEST_CASE("every rule is positive on its domain") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Domain d = trial % 2 ? Domain::kBilateral : Domain::kUnilateral;
    const auto w = oracle::random_weights(rng, d, 0.1, 10.0);
    for (Index n = d == Domain::kBilateral ? -300 : 0; n <= 300; ++n) {
      REQUIRE(w.at(n) > 0.0);
    }
  }
}

TEST_CASE("periodic with one value equals constant") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Index> idx(-1'000'000, 1'000'000);
  const auto p = WeightSequence::periodic({1.75});
  const auto c = WeightSequence::constant(1.75);
  for (int i = 0; i < 1000; ++i) {
    const Index n = idx(rng);
    CHECK(p.at(n) == c.at(n));
  }
}

TEST_CASE("shifted re-indexes the rule") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = oracle::random_weights(rng, Domain::kBilateral);
    const Index delta = std::uniform_int_distribution<Index>(-7, 7)(rng);
    const auto s = w.shifted(delta);
    for (Index n = -60; n <= 60; ++n) CHECK(s.at(n) == w.at(n - delta));
  }
}

TEST_CASE("structural bounds agree with sampling") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto w = oracle::random_weights(rng, Domain::kBilateral);
    const WeightBounds b = w.bounds();
    const WeightBounds neg = w.bounds_below_zero();
    double lo = HUGE_VAL, hi = 0.0, nlo = HUGE_VAL, nhi = 0.0;
    // Every rule in the generator settles into its pattern well inside this
    // window, so the sampled extremes are the exact ones.
    for (Index n = -2000; n <= 2000; ++n) {
      lo = std::min(lo, w.at(n));
      hi = std::max(hi, w.at(n));
      if (n < 0) {
        nlo = std::min(nlo, w.at(n));
        nhi = std::max(nhi, w.at(n));
      }
    }
    CHECK(b.inf == lo);
    CHECK(b.sup == hi);
    CHECK(neg.inf == nlo);
    CHECK(neg.sup == nhi);
  }
}

TEST_CASE("partial_sum_sup classifies eventually periodic rules") {
  using K = PartialSumBound::Kind;
  CHECK(WeightSequence::constant(2.0).partial_sum_sup(0).kind == K::kUnbounded);
  const auto one = WeightSequence::constant(1.0).partial_sum_sup(5);
  CHECK(one.kind == K::kBounded);
  CHECK(one.sup == 0.0);
  const auto osc = WeightSequence::periodic({0.5, 2.0}).partial_sum_sup(1);
  CHECK(osc.kind == K::kBounded);
  CHECK(osc.sup == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(WeightSequence::constant(0.5).partial_sum_sup(0).kind == K::kBounded);
  CHECK(WeightSequence::block_interleaved(0.5, 2.0, {1, 2})
            .partial_sum_sup(0)
            .kind == K::kUnknown);
}

TEST_CASE("index set membership follows residues and exceptions") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Domain d = trial % 3 ? Domain::kBilateral : Domain::kUnilateral;
    const auto raw = oracle::random_set(rng, 12, d, 6, 40);
    const IndexSet F = raw.build();
    const Index lo = d == Domain::kBilateral ? -5000 : 0;
    const Index hi = 5000;
    std::vector<Index> expected;
    for (Index m = lo; m <= hi; ++m) {
      const bool in = oracle::member(raw.p, raw.residues, raw.includes,
                                     raw.excludes, d, m);
      REQUIRE(F.contains(m) == in);
      if (in) expected.push_back(m);
    }
    CHECK(F.enumerate(lo, hi) == expected);
  }
}

TEST_CASE("index set validation") {
  CHECK_THROWS_AS(IndexSet(0, {0}), InvalidArgument);
  CHECK_THROWS_AS(IndexSet(2, {}), InvalidArgument);
  CHECK_THROWS_AS(IndexSet(2, {2}), InvalidArgument);
  CHECK_THROWS_AS(IndexSet(2, {0}, Domain::kBilateral, {4}, {4}),
                  InvalidArgument);
  CHECK_THROWS_AS(IndexSet(2, {0}, Domain::kUnilateral, {-3}, {}),
                  DomainError);
}

TEST_CASE("nearest member and first member") {
  const IndexSet odds(2, {1});
  CHECK(odds.nearest_to_origin(10) == Index{1});
  CHECK(odds.first_member(2, 10) == Index{3});
  const IndexSet sparse(100, {0}, Domain::kBilateral, {}, {0});
  CHECK(sparse.nearest_to_origin(99) == std::nullopt);
  CHECK(sparse.nearest_to_origin(100) == Index{100});
  CHECK(sparse.first_member(0, 50) == std::nullopt);
}

TEST_CASE("sparse vector arithmetic") {
  CHECK(unit(0) == SparseVector{{0, 1.0}});
  CHECK(unit(7).norm() == 1.0);
  CHECK(unit(3) + unit(3) == SparseVector{{3, 2.0}});
  SparseVector v = unit(1) - unit(1);
  CHECK(v.empty());
  v.set(4, 3.0);
  v.add(-2, 4.0);
  CHECK(v.norm() == 5.0);
  CHECK(v.min_index() == Index{-2});
  CHECK(v.max_index() == Index{4});
  CHECK(inner(v, unit(4)) == 3.0);
  CHECK(distance(v, SparseVector{{4, 3.0}}) == 4.0);
  v.set(4, 0.0);
  CHECK(v.size() == 1);
}

TEST_CASE("power schedules") {
  const auto a = PowerSchedule::arithmetic(2, 4);
  CHECK(std::vector<Index>(a.powers().begin(), a.powers().end()) ==
        std::vector<Index>{2, 4, 6, 8});
  CHECK(a.stride() == Index{2});
  CHECK_FALSE(PowerSchedule::explicit_powers({1, 5}).stride());
  CHECK_THROWS_AS(PowerSchedule::explicit_powers({}), InvalidArgument);
  CHECK_THROWS_AS(PowerSchedule::explicit_powers({3, 3}), InvalidArgument);
  CHECK_THROWS_AS(PowerSchedule::explicit_powers({0, 3}), InvalidArgument);
  CHECK_THROWS_AS(PowerSchedule::arithmetic(0, 3), InvalidArgument);
}

TEST_CASE("compensated log accumulation") {
  LogAccumulator acc;
  long double exact = 0.0L;
  for (int i = 0; i < 100000; ++i) {
    const double term = (i % 2 ? 1.0 : -1.0) * std::log(1.0 + 1e-3 * (i % 7));
    acc.add(term);
    exact += term;
  }
  CHECK(std::fabs(acc.value() - (double)exact) < 1e-12);
}

TEST_CASE("decision rule") {
  const CriterionThresholds th;
  SUBCASE("decaying traces are satisfied") {
    Trace t;
    for (int k = 1; k <= 10; ++k) t.push_back(-2.0 * k);
    const Verdict v = decide(DecisionRule::kDecay, {t, t}, th);
    CHECK(v.status == Status::kSatisfiedAtHorizon);
    CHECK(v.margin == doctest::Approx(-20.0 - th.satisfy_log));
    CHECK(v.horizon == 10);
  }
  SUBCASE("flat unit products are violated") {
    const Verdict v = decide(DecisionRule::kDecay, {Trace(8, 0.0)}, th);
    CHECK(v.status == Status::kViolatedAtHorizon);
  }
  SUBCASE("short traces are inconclusive") {
    const Verdict v = decide(DecisionRule::kDecay, {Trace{-50, -60}}, th);
    CHECK(v.status == Status::kInconclusive);
  }
  SUBCASE("growth rule honours structural bounds") {
    Trace t{1, 2, 3};
    CHECK(decide(DecisionRule::kGrowth, {t}, th, 5.0).status ==
          Status::kViolatedAtHorizon);
    CHECK(decide(DecisionRule::kGrowth, {t}, th).status ==
          Status::kInconclusive);
    CHECK(decide(DecisionRule::kGrowth, {Trace{1, 20}}, th).status ==
          Status::kSatisfiedAtHorizon);
  }
  SUBCASE("status is reproducible from traces") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> step(-1.0, 3.0);
    for (int trial = 0; trial < 300; ++trial) {
      Trace a, b;
      double x = 0, y = 0;
      for (int k = 0; k < 12; ++k) {
        a.push_back(x += step(rng));
        b.push_back(y += step(rng));
      }
      const auto rule = trial % 2 ? DecisionRule::kDecay : DecisionRule::kGrowth;
      const Verdict v =
          rule == DecisionRule::kDecay ? decide(rule, {a, b}, th)
                                       : decide(rule, {a}, th);
      CHECK(recompute_status(v) == v.status);
    }
  }
  CHECK_THROWS_AS((CriterionThresholds{1.0, 2.0, 5}.validate()),
                  InvalidArgument);
  CHECK_THROWS_AS((CriterionThresholds{-1.0, 2.0, 0}.validate()),
                  InvalidArgument);
}
