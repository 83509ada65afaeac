// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// all pass. Every tolerance and budget used below is fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "shiftdyn/constructors.hpp"
#include "shiftdyn/criteria.hpp"
#include "shiftdyn/invariance.hpp"
#include "shiftdyn/orbit_lab.hpp"
#include "shiftdyn/shift_ops.hpp"
#include "support/oracles.hpp"

using namespace shiftdyn;

namespace {

constexpr double kTraceTol = 1e-9;
constexpr long double kRelTol = 1e-9L;
constexpr double kPlacementSlack = 1e-9;
constexpr double kBudget1s = 1.0;
constexpr double kBudget5s = 5.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

OperatorSpec step_forward() {
  return OperatorSpec(ShiftKind::kBilateralForward, WeightSequence::step(0.5, 2.0));
}

const IndexSet& evens() {
  static const IndexSet F(2, {0});
  return F;
}

long double log_product(Index first, Index last,
                        const std::function<long double(Index)>& f) {
  return std::log(oracle::product(first, last, f));
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const OperatorSpec op = step_forward();
  const auto sched = PowerSchedule::arithmetic(2, 32);
  const ConditionResult r = eq65_forward(op, evens(), 0, sched);
  const double elapsed = seconds_since(t0);
  const auto& w = op.weights();
  for (std::size_t k = 0; k < sched.size(); ++k) {
    const Index n = sched[k];
    const long double plus =
        log_product(0, n - 1, [&](Index j) { return (long double)w.at(j); });
    const long double minus = log_product(
        1, n, [&](Index j) { return 1.0L / (long double)w.at(-j); });
    o.require(std::fabs((long double)r.trace_plus()[k] - plus) <= kTraceTol,
              "trace_plus off the oracle at k=" + std::to_string(k + 1));
    o.require(std::fabs((long double)r.trace_minus()[k] - minus) <= kTraceTol,
              "trace_minus off the oracle at k=" + std::to_string(k + 1));
  }
  o.require(std::fabs(r.trace_plus().back() - 64 * std::log(0.5)) <= kTraceTol,
            "trace_plus(32) != 64 ln 0.5");
  o.require(r.verdict.status == Status::kSatisfiedAtHorizon, "not Satisfied");
  o.require(elapsed < kBudget1s, "runtime " + fmt(elapsed) + " s");
  if (o.pass) {
    o.detail = "trace_plus(32)=" + fmt(r.trace_plus().back()) +
               " trace_minus(32)=" + fmt(r.trace_minus().back()) + " in " +
               fmt(elapsed) + " s";
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const Example2B ex = paper_example_2B();
  CriterionThresholds th;
  th.violate_log = std::log(1e6);
  const UnilateralResult lim = unilateral_limsup(ex.op, ex.space, 1, 20, th);
  o.require(lim.verdict.status == Status::kSatisfiedAtHorizon, "limsup not Satisfied");
  o.require(std::fabs(lim.running.back() - 20 * std::log(2.0)) <= kTraceTol,
            "running max != 20 ln 2");

  const std::vector<SparseVector> grid{unit(1), SparseVector{{1, -1.0}}, unit(3),
                                       SparseVector{{3, -1.0}}};
  const double eps = 1e-2;
  const CriterionVector cv = build_criterion_vector(
      ex.op, ex.space, grid, eps, PowerSchedule::arithmetic(2, 500), th);
  const auto window = TruncationWindow::of_size(Domain::kUnilateral, 64);
  const DensityReport rep = density_experiment(ex.op, ex.space, cv.x, grid, eps,
                                               2000, window, cv.placements);
  const double elapsed = seconds_since(t0);
  o.require(rep.hit_rate == 1.0, "hit rate " + fmt(rep.hit_rate));
  for (const TargetOutcome& t : rep.targets) {
    o.require(!t.hit || t.achieved_distance < eps, "hit above eps");
  }
  o.require(elapsed < kBudget5s, "runtime " + fmt(elapsed) + " s");
  if (o.pass) {
    o.detail = "running max " + fmt(lim.running.back()) + ", hit rate " +
               fmt(rep.hit_rate) + " in " + fmt(elapsed) + " s";
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(3);
  const auto t0 = Clock::now();
  int compared = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const ShiftKind kind = oracle::random_kind(rng);
    const Domain d = domain_of(kind);
    const OperatorSpec op(kind, oracle::random_weights(rng, d, 0.5, 2.0));
    const Index m = std::uniform_int_distribution<Index>(
        d == Domain::kBilateral ? -50 : 0, 50)(rng);
    const Index n = std::uniform_int_distribution<Index>(1, 50)(rng);
    const oracle::Coefficient ref = oracle::power(op, m, n);
    const PowerCoefficient got = power_product(op, m, n);
    o.require(got.is_annihilated() == ref.annihilated, "annihilation mismatch");
    if (!ref.annihilated) {
      const long double v = std::exp((long double)got.log().log_value);
      o.require(std::fabs(v - ref.value) / ref.value < kRelTol,
                "power_product relative error");
      ++compared;
    }
    const auto inv = oracle::right_inverse(op, m, n);
    if (inv) {
      const long double v =
          std::exp((long double)right_inverse_power(op, m, n).log_value);
      o.require(std::fabs(v - inv->value) / inv->value < kRelTol,
                "right_inverse_power relative error");
      ++compared;
    } else {
      bool threw = false;
      try {
        right_inverse_power(op, m, n);
      } catch (const DomainError&) {
        threw = true;
      }
      o.require(threw, "right inverse should leave the domain");
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < kBudget1s, "runtime " + fmt(elapsed) + " s");
  if (o.pass) {
    o.detail = std::to_string(compared) + " products within 1e-9 in " +
               fmt(elapsed) + " s";
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(4);
  int checks = 0;
  for (ShiftKind kind :
       {ShiftKind::kBilateralForward, ShiftKind::kBilateralBackward,
        ShiftKind::kUnilateralForward, ShiftKind::kUnilateralBackward}) {
    const Domain d = domain_of(kind);
    const OperatorSpec op(kind, oracle::random_weights(rng, d));
    const OperatorSpec adj = adjoint(op);
    for (int trial = 0; trial < 100; ++trial) {
      const IndexSet F = oracle::random_set(rng, 12, d, 3, 64).build();
      const IndexSet P = perp(F);
      const Index lo = d == Domain::kBilateral ? -128 : 0;
      for (Index n = 1; n <= 32; ++n) {
        const bool a = is_power_invariant(op, F, n);
        const bool b = is_power_invariant(adj, P, n);
        o.require(a == b, "duality broken at n=" + std::to_string(n));
        o.require(a == oracle::invariant(kind, F, n, lo, 128),
                  "window oracle disagrees at n=" + std::to_string(n));
        ++checks;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " (F, n) pairs agree";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Index> mod(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    {
      const Index p1 = mod(rng), p2 = mod(rng);
      const Index m_i = std::uniform_int_distribution<Index>(-5, 5)(rng);
      const Index h_p = std::uniform_int_distribution<Index>(-5, 5)(rng);
      const IndexSet F1(p1, {((m_i % p1) + p1) % p1});
      const IndexSet F2(p2, {((h_p % p2) + p2) % p2});
      const OperatorSpec a(ShiftKind::kBilateralForward,
                           oracle::random_weights(rng, Domain::kBilateral));
      const OperatorSpec b(ShiftKind::kBilateralForward,
                           oracle::random_weights(rng, Domain::kBilateral));
      const auto sched = PowerSchedule::arithmetic(std::lcm(p1, p2), 24);
      const DirectSumResult ds =
          direct_sum_condition(DirectSumSpec(a, b, F1, F2), m_i, h_p, sched);
      const ConditionResult ra = eq65_forward(a, F1, m_i, sched);
      const ConditionResult rb = eq65_forward(b, F2, h_p, sched);
      for (std::size_t k = 0; k < sched.size(); ++k) {
        o.require(ds.max_plus()[k] == std::max(ra.trace_plus()[k], rb.trace_plus()[k]),
                  "max_plus not bit-identical");
        o.require(ds.max_minus()[k] ==
                      std::max(ra.trace_minus()[k], rb.trace_minus()[k]),
                  "max_minus not bit-identical");
      }
    }
    {
      const Index p1 = mod(rng), p2 = mod(rng);
      const Index m_i = std::uniform_int_distribution<Index>(0, 5)(rng);
      const Index h_p = std::uniform_int_distribution<Index>(0, 5)(rng);
      const IndexSet F1(p1, {m_i % p1}, Domain::kUnilateral);
      const IndexSet F2(p2, {h_p % p2}, Domain::kUnilateral);
      const OperatorSpec a(ShiftKind::kUnilateralBackward,
                           oracle::random_weights(rng, Domain::kUnilateral));
      const OperatorSpec b(ShiftKind::kUnilateralBackward,
                           oracle::random_weights(rng, Domain::kUnilateral));
      const Index N = 40;
      const DirectSumUnilateralResult ds =
          direct_sum_unilateral(DirectSumSpec(a, b, F1, F2), m_i, h_p, N);
      const UnilateralResult ra = unilateral_limsup(a, F1, m_i, N);
      const UnilateralResult rb = unilateral_limsup(b, F2, h_p, N);
      for (std::size_t k = 0; k < ds.min_trace.size(); ++k) {
        o.require(ds.min_trace[k] == std::min(ra.partial[k], rb.partial[k]),
                  "min_trace not bit-identical");
      }
    }
  }
  if (o.pass) o.detail = "50 forward and 50 unilateral sums bit-identical";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> low(0.3, 0.8), high(1.25, 3.0);
  const double admit_margin = std::log(1e-3);
  int kept = 0, drawn = 0, checks = 0;
  while (kept < 20 && drawn < 10000) {
    ++drawn;
    const double a = low(rng), b = high(rng);
    WeightSequence w = WeightSequence::step(a, b);
    if (std::bernoulli_distribution(0.5)(rng)) {
      std::map<Index, double> entries;
      std::uniform_int_distribution<Index> where(-10, 10);
      std::uniform_real_distribution<double> bump(0.9, 1.1);
      for (int i = 0; i < 4; ++i) {
        const Index m = where(rng);
        entries[m] = w.at(m) * bump(rng);
      }
      w = WeightSequence::table(entries, w);
    }
    const OperatorSpec op(ShiftKind::kBilateralForward, w);
    const Index p = std::uniform_int_distribution<Index>(1, 4)(rng);
    const Index m_i = std::uniform_int_distribution<Index>(0, 5)(rng);
    std::vector<Index> residues{0};
    if (m_i % p != 0) residues.push_back(m_i % p);
    const IndexSet F(p, residues);
    const auto sched = PowerSchedule::arithmetic(p, 32);
    const ConditionResult r = eq65_forward(op, F, m_i, sched);
    if (r.verdict.status != Status::kSatisfiedAtHorizon ||
        !(r.verdict.margin < admit_margin)) {
      continue;
    }
    ++kept;
    for (Index q = 0; q <= 2; ++q) {
      Index n = sched.back() + m_i + q + 1;
      while (!is_power_invariant(op, F, n)) ++n;
      for (double delta : {0.1, 0.01}) {
        const Thm19Report rep = thm19_finite_check(op, F, delta, q, n);
        o.require(rep.pass, "finite check failed: a=" + fmt(a) + " b=" + fmt(b) +
                                " p=" + std::to_string(p) +
                                " m_i=" + std::to_string(m_i) +
                                " q=" + std::to_string(q) + " delta=" + fmt(delta));
        ++checks;
      }
    }
  }
  o.require(kept == 20, "only " + std::to_string(kept) + " qualifying configurations");
  if (o.pass) {
    o.detail = std::to_string(kept) + " configurations, " + std::to_string(checks) +
               " finite checks, 0 failures";
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto t0 = Clock::now();
  HerreroParams p;
  p.low = 0.5;
  p.high = 2.0;
  p.lengths = {2, 4, 8, 16, 32};
  p.period = 2;
  const HerreroOutcome out = herrero_construction(p);
  const double elapsed = seconds_since(t0);
  o.require(out.verified, "not verified: " + out.diagnostic);
  o.require(out.bundle.forward.verdict.status == Status::kSatisfiedAtHorizon,
            "forward not Satisfied");
  o.require(out.bundle.backward.verdict.status == Status::kSatisfiedAtHorizon,
            "backward not Satisfied");
  io::Json config = {{"schema_version", io::kSchemaVersion},
                     {"family", "herrero"},
                     {"low", 0.5},
                     {"high", 2.0},
                     {"lengths", p.lengths},
                     {"period", 2}};
  const cli::CommandResult r = cli::run_construct(config);
  o.require(r.exit_code == 0, "construct exit " + std::to_string(r.exit_code));
  o.require(elapsed < kBudget1s, "runtime " + fmt(elapsed) + " s");
  if (o.pass) {
    o.detail = "forward margin " + fmt(out.bundle.forward.verdict.margin) +
               ", backward margin " + fmt(out.bundle.backward.verdict.margin) +
               " in " + fmt(elapsed) + " s";
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const OperatorSpec op = step_forward();
  const double eps = 0.1;
  const std::vector<SparseVector> targets{unit(0), unit(2), SparseVector{{0, -1.0}}};
  const CriterionVector cv = build_criterion_vector(
      op, evens(), targets, eps, PowerSchedule::arithmetic(2, 32));
  o.require(cv.tail_bound <= eps, "tail_bound " + fmt(cv.tail_bound));
  const auto window = TruncationWindow::of_size(Domain::kBilateral, 129);
  const DensityReport rep = density_experiment(op, evens(), cv.x, targets, eps,
                                               cv.placements.back(), window,
                                               cv.placements);
  for (const TargetOutcome& t : rep.targets) {
    o.require(t.placement_distance.has_value(), "placement not sampled");
    if (!t.placement_distance) continue;
    o.require(*t.placement_distance < eps, "placement distance above eps");
    o.require(*t.placement_distance <= cv.tail_bound + kPlacementSlack,
              "placement distance above tail_bound");
  }
  // T^n S^n = I at every placement.
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const SparseVector back = apply_power(
        op, apply_right_inverse_power(op, targets[j], cv.placements[j]),
        cv.placements[j]);
    SparseVector d = back;
    d.add_scaled(targets[j], -1.0);
    o.require(d.norm() <= kPlacementSlack, "T^n S^n != I");
  }
  if (o.pass) {
    std::ostringstream s;
    s << "placements";
    for (Index n : cv.placements) s << ' ' << n;
    s << ", tail_bound " << fmt(cv.tail_bound) << ", distances";
    for (const TargetOutcome& t : rep.targets) s << ' ' << fmt(*t.placement_distance);
    o.detail = s.str();
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  const io::Json uf_op = {{"kind", "unilateral-forward"},
                          {"weights", {{"rule", "constant"}, {"lambda", 2.0}}}};
  const std::vector<io::Json> grids{
      {{"members", 2}},
      {{"members", 4}},
      {{"targets", io::Json::array({io::Json::array({io::Json::array({3, 1.0})})})}}};
  for (const io::Json& grid : grids) {
    const io::Json config = {{"schema_version", io::kSchemaVersion},
                             {"operator", uf_op},
                             {"subspace", {{"modulus", 1}, {"residues", {0}}}},
                             {"window", {{"size", 64}}},
                             {"n_iter", 500},
                             {"grid", grid}};
    const cli::CommandResult r = cli::run_simulate(config);
    o.require(r.exit_code == cli::kExitViolated,
              "simulate exit " + std::to_string(r.exit_code));
    const io::Json& targets = r.report["density"]["targets"];
    o.require(!targets.empty(), "empty grid");
    for (const io::Json& t : targets) o.require(!t["hit"].get<bool>(), "unexpected hit");
  }

  const auto one = WeightSequence::constant(1.0);
  const auto sched = PowerSchedule::arithmetic(2, 16);
  const OperatorSpec f1(ShiftKind::kBilateralForward, one);
  const OperatorSpec b1(ShiftKind::kBilateralBackward, one);
  auto violated = [&](const Verdict& v, const char* name) {
    o.require(v.status == Status::kViolatedAtHorizon,
              std::string(name) + " not Violated");
  };
  violated(eq65_forward(f1, evens(), 0, sched).verdict, "eq65");
  violated(backward_condition(b1, evens(), 0, sched).verdict, "bac");
  const GatedCondition g84 = thm84_condition(f1, evens(), sched, {}, 16);
  o.require(g84.result.has_value(), "thm84 not applicable");
  if (g84.result) violated(g84.result->verdict, "thm84");
  const GatedCondition g85 = prop85_condition(b1, evens(), sched, {}, 16);
  o.require(g85.result.has_value(), "prop85 not applicable");
  if (g85.result) violated(g85.result->verdict, "prop85");
  violated(direct_sum_condition(DirectSumSpec(f1, f1, evens(), evens()), 0, 0, sched)
               .verdict,
           "thm28");
  const auto uone = WeightSequence::constant(1.0, Domain::kUnilateral);
  const OperatorSpec u1(ShiftKind::kUnilateralBackward, uone);
  const IndexSet odds(2, {1}, Domain::kUnilateral);
  violated(unilateral_limsup(u1, odds, 1, 20).verdict, "unilateral");
  violated(direct_sum_unilateral(DirectSumSpec(u1, u1, odds, odds), 1, 1, 20).verdict,
           "corollary");
  if (o.pass) o.detail = "0 hits on 3 grids; Constant{1} Violated under 7 criteria";
  return o;
}

Outcome criterion10() {
  Outcome o;
  const Lemma35Report r = lemma35_probe(step_forward(), evens(),
                                        PowerSchedule::arithmetic(2, 32), 0,
                                        {-4, -2, 2, 4}, 1e-3);
  o.require(r.triggered, "anchor trace not below tol");
  o.require(r.pass, "probe failed");
  o.require(r.entries.size() == 4, "expected 4 entries");
  std::ostringstream s;
  s << "distortion bounds";
  for (const Lemma35Entry& e : r.entries) {
    o.require(e.pass, "m_r=" + std::to_string(e.m_r) + " failed");
    o.require(std::isfinite(e.distortion), "non-finite distortion");
    s << ' ' << e.m_r << ':' << fmt(e.distortion);
  }
  if (o.pass) o.detail = s.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"1 step-weight forward condition", criterion1},
      {"2 unilateral 2B reproduction", criterion2},
      {"3 oracle equivalence", criterion3},
      {"4 invariance duality", criterion4},
      {"5 direct-sum decomposition", criterion5},
      {"6 limit condition implies finite check", criterion6},
      {"7 herrero witness", criterion7},
      {"8 criterion-vector bound", criterion8},
      {"9 negative control", criterion9},
      {"10 decay propagation probe", criterion10}};
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
