#include "shiftdyn/orbit_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "shiftdyn/invariance.hpp"
#include "shiftdyn/shift_ops.hpp"

namespace shiftdyn {

namespace {

constexpr double kOffSubspaceTolerance = 1e-12;
constexpr std::size_t kMaxPerturbedCoordinates = 6;

// Large enough that a non-degenerate set always has a member this close to
// the origin, and every exceptional index is inside.
Index search_radius(const IndexSet& F) {
  Index r = F.modulus();
  for (Index m : F.includes()) r = std::max(r, std::abs(m));
  for (Index m : F.excludes()) r = std::max(r, std::abs(m));
  return 2 * r + 1;
}

void require_in_span(const IndexSet& F, const SparseVector& v,
                     const char* what) {
  for (const auto& [m, c] : v) {
    if (!F.contains(m)) {
      throw InvalidArgument(std::string(what) + " has support at " +
                            std::to_string(m) + ", outside the subspace");
    }
  }
}

std::optional<Index> nearest_support(const std::vector<SparseVector>& vs) {
  std::optional<Index> best;
  for (const SparseVector& v : vs) {
    for (const auto& [m, c] : v) {
      if (!best || std::abs(m) < std::abs(*best) ||
          (std::abs(m) == std::abs(*best) && m > *best)) {
        best = m;
      }
    }
  }
  return best;
}

Verdict precheck(const OperatorSpec& op, const IndexSet& F, Index anchor,
                 const PowerSchedule& sched, const CriterionThresholds& th) {
  switch (op.kind()) {
    case ShiftKind::kBilateralForward:
      return eq65_forward(op, F, anchor, sched, th).verdict;
    case ShiftKind::kBilateralBackward:
      return backward_condition(op, F, anchor, sched, th).verdict;
    case ShiftKind::kUnilateralBackward:
      require_admissible(op, F, sched.powers());
      return unilateral_limsup(op, F, anchor, sched.back(), th).verdict;
    case ShiftKind::kUnilateralForward:
      break;
  }
  throw ConditionRefused(
      "unilateral forward weighted shifts can not be subspace-hypercyclic "
      "for any subspace",
      std::nullopt);
}

double off_subspace_max(const IndexSet& F, const SparseVector& v) {
  double worst = 0.0;
  for (const auto& [m, c] : v) {
    if (!F.contains(m)) worst = std::max(worst, std::fabs(c));
  }
  return worst;
}

}  // namespace

TruncationWindow::TruncationWindow(Domain domain, Index lo, Index hi)
    : domain_(domain), lo_(lo), hi_(hi) {
  if (domain == Domain::kUnilateral && lo != 0) {
    throw InvalidArgument("unilateral windows start at 0");
  }
  if (lo > 0 || hi < 0) {
    throw InvalidArgument("window [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] must contain 0");
  }
}

TruncationWindow TruncationWindow::of_size(Domain domain, Index size) {
  if (size < 1) throw InvalidArgument("window size must be >= 1");
  if (domain == Domain::kUnilateral) return {domain, 0, size - 1};
  const Index lo = -(size / 2);
  return {domain, lo, lo + size - 1};
}

bool TruncationWindow::contains(const SparseVector& v) const {
  return v.empty() || (contains(*v.min_index()) && contains(*v.max_index()));
}

CriterionVector build_criterion_vector(const OperatorSpec& op,
                                       const IndexSet& F,
                                       const std::vector<SparseVector>& targets,
                                       double eps, const PowerSchedule& sched,
                                       const CriterionThresholds& th) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  require_same_domain(op, F);
  for (const SparseVector& y : targets) require_in_span(F, y, "target");

  CriterionVector out;
  std::optional<Index> anchor = nearest_support(targets);
  if (!anchor) anchor = F.nearest_to_origin(search_radius(F));
  if (!anchor) throw PreconditionError("the subspace has no member to anchor");
  Verdict v = precheck(op, F, *anchor, sched, th);
  if (v.status != Status::kSatisfiedAtHorizon) {
    throw ConditionRefused(std::string("limit condition is ") +
                               to_string(v.status) + " at m_i = " +
                               std::to_string(*anchor),
                           std::move(v));
  }
  out.condition = std::move(v);

  std::size_t k = 0;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const SparseVector& y = targets[j];
    const double budget = eps * std::ldexp(1.0, -static_cast<int>(j + 1));
    const double share = j == 0 ? budget : budget / static_cast<double>(j);
    bool placed = false;
    for (; k < sched.size() && !placed; ++k) {
      const Index n = sched[k];
      bool ok = right_inverse_norm(op, y, n) <= budget;
      for (std::size_t i = 0; ok && i < j; ++i) {
        const Index gap = n - out.placements[i];
        ok = right_inverse_norm(op, y, gap) <= budget &&
             power_norm(op, targets[i], gap) <= share;
      }
      if (ok) {
        out.placements.push_back(n);
        placed = true;
      }
    }
    if (!placed) {
      throw HorizonError("schedule exhausted before placing target " +
                         std::to_string(j) + " of " +
                         std::to_string(targets.size()));
    }
  }

  for (std::size_t j = 0; j < targets.size(); ++j) {
    double bound = 0.0;
    for (std::size_t i = 0; i < j; ++i) {
      bound += power_norm(op, targets[i], out.placements[j] - out.placements[i]);
    }
    for (std::size_t l = j + 1; l < targets.size(); ++l) {
      bound += right_inverse_norm(op, targets[l],
                                  out.placements[l] - out.placements[j]);
    }
    out.target_bounds.push_back(bound);
    out.tail_bound = std::max(out.tail_bound, bound);
    out.x += apply_right_inverse_power(op, targets[j], out.placements[j]);
  }
  return out;
}

DensityReport density_experiment(
    const OperatorSpec& op, const IndexSet& F, const SparseVector& x,
    const std::vector<SparseVector>& grid, double eps, Index n_iter,
    const TruncationWindow& window,
    const std::optional<std::vector<Index>>& placements, unsigned threads) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (n_iter < 0) throw InvalidArgument("n_iter must be >= 0");
  if (grid.empty()) throw InvalidArgument("target grid is empty");
  require_same_domain(op, F);
  if (window.domain() != op.domain()) {
    throw DomainError("window domain does not match the operator");
  }
  if (!window.contains(x)) {
    throw InvalidArgument("window too small: x has support outside [" +
                          std::to_string(window.lo()) + ", " +
                          std::to_string(window.hi()) + "]");
  }
  for (const SparseVector& t : grid) {
    require_in_span(F, t, "grid target");
    if (!window.contains(t)) {
      throw InvalidArgument("grid target outside the window");
    }
  }
  if (placements && placements->size() != grid.size()) {
    throw InvalidArgument("placements must match the grid one to one");
  }

  DensityReport report;
  report.eps = eps;
  report.targets.resize(grid.size());
  for (std::size_t t = 0; t < grid.size(); ++t) {
    report.targets[t].id = t;
    report.targets[t].best_distance = HUGE_VAL;
    if (placements) report.targets[t].placement = (*placements)[t];
  }

  auto visit = [&](const SparseVector& v, Index n, std::size_t begin,
                   std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      TargetOutcome& o = report.targets[t];
      const double d = distance(v, grid[t]);
      if (d < o.best_distance) {
        o.best_distance = d;
        o.best_power = n;
      }
      if (o.placement && *o.placement == n) o.placement_distance = d;
      if (!o.hit && d < eps) {
        o.hit = true;
        o.first_hit_power = n;
        o.achieved_distance = d;
      }
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, grid.size() / 16));
  double leaked_sq = 0.0;
  SparseVector v = x;
  for (Index n = 1; n <= n_iter; ++n) {
    SparseVector next = apply(op, v);
    SparseVector kept;
    for (const auto& [m, c] : next) {
      if (window.contains(m)) {
        kept.set(m, c);
      } else {
        leaked_sq += c * c;
      }
    }
    v = std::move(kept);
    report.leaked_norm_max = std::sqrt(leaked_sq);
    report.iterations = n;

    if (!is_power_invariant(op, F, n)) continue;
    if (off_subspace_max(F, v) > kOffSubspaceTolerance) continue;
    ++report.admissible_samples;
    if (workers == 1) {
      visit(v, n, 0, grid.size());
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (grid.size() + workers - 1) / workers;
      for (std::size_t b = 0; b < grid.size(); b += chunk) {
        pool.emplace_back(visit, std::cref(v), n, b,
                          std::min(grid.size(), b + chunk));
      }
      for (std::thread& th : pool) th.join();
    }
  }

  std::size_t hits = 0;
  for (const TargetOutcome& o : report.targets) hits += o.hit ? 1 : 0;
  report.hit_rate =
      static_cast<double>(hits) / static_cast<double>(grid.size());
  return report;
}

std::vector<SparseVector> default_grid(const IndexSet& F,
                                       const TruncationWindow& window,
                                       std::size_t count) {
  std::vector<Index> members = F.enumerate(window.lo(), window.hi());
  std::stable_sort(members.begin(), members.end(), [](Index a, Index b) {
    return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a > b);
  });
  if (members.size() > count) members.resize(count);

  std::vector<SparseVector> grid;
  for (Index m : members) {
    grid.push_back(unit(m));
    grid.push_back(-1.0 * unit(m));
  }
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      SparseVector s = h * (unit(members[a]) + unit(members[b]));
      grid.push_back(s);
      grid.push_back(-1.0 * s);
    }
  }
  return grid;
}

TransitivityResult transitivity_probe(const OperatorSpec& op,
                                      const IndexSet& F,
                                      const SparseVector& x_target,
                                      const SparseVector& y_target, double eps,
                                      const PowerSchedule& sched,
                                      double grid_resolution) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (!(grid_resolution > 0.0)) {
    throw InvalidArgument("grid_resolution must be positive");
  }
  require_same_domain(op, F);
  require_in_span(F, x_target, "x_target");
  require_in_span(F, y_target, "y_target");

  std::vector<Index> coords;
  for (const auto& [m, c] : x_target) {
    if (coords.size() == kMaxPerturbedCoordinates) break;
    coords.push_back(m);
  }
  // Every offset pattern in {-1, 0, 1}^d, smallest total displacement first.
  std::vector<std::vector<int>> offsets{std::vector<int>(coords.size(), 0)};
  for (std::size_t d = 0; d < coords.size(); ++d) {
    const std::size_t existing = offsets.size();
    for (std::size_t i = 0; i < existing; ++i) {
      for (int s : {-1, 1}) {
        std::vector<int> o = offsets[i];
        o[d] = s;
        offsets.push_back(std::move(o));
      }
    }
  }
  auto l1 = [](const std::vector<int>& o) {
    int s = 0;
    for (int t : o) s += std::abs(t);
    return s;
  };
  std::stable_sort(offsets.begin(), offsets.end(),
                   [&](const auto& a, const auto& b) { return l1(a) < l1(b); });

  TransitivityResult r;
  for (Index n : sched.powers()) {
    if (!is_power_invariant(op, F, n)) continue;
    SparseVector lifted;
    try {
      lifted = apply_right_inverse_power(op, y_target, n);
    } catch (const DomainError&) {
      continue;
    }
    if (off_subspace_max(F, lifted) > 0.0) continue;
    ++r.powers_searched;
    for (const std::vector<int>& o : offsets) {
      ++r.points_searched;
      SparseVector z = x_target;
      for (std::size_t d = 0; d < coords.size(); ++d) {
        if (o[d] != 0) z.add(coords[d], o[d] * grid_resolution);
      }
      z += lifted;
      const double xd = distance(x_target, z);
      if (!(xd < eps)) continue;
      const double yd = distance(apply_power(op, z, n), y_target);
      if (yd < eps) {
        r.found = true;
        r.z = std::move(z);
        r.n = n;
        r.x_distance = xd;
        r.y_distance = yd;
        return r;
      }
    }
  }
  return r;
}

PerpProbeReport perp_question_probe(const OperatorSpec& op,
                                    const IndexSet& M1, const IndexSet& M2,
                                    const PowerSchedule& sched_fwd,
                                    const PowerSchedule& sched_bwd,
                                    const CriterionThresholds& th) {
  if (op.kind() != ShiftKind::kBilateralForward) {
    throw PreconditionError("the perp probe takes a bilateral forward shift");
  }
  const OperatorSpec adj = adjoint(op);
  const IndexSet P = perp(M1);

  auto run = [&](PerpProbeEntry& e, const IndexSet& S, auto evaluate) {
    e.anchor = S.nearest_to_origin(search_radius(S));
    if (!e.anchor) {
      e.note = "no member to anchor";
      return;
    }
    try {
      e.result = evaluate(S, *e.anchor);
    } catch (const PreconditionError& err) {
      e.note = err.what();
    }
  };

  PerpProbeReport r;
  r.forward_m1.label = "forward condition on M1";
  r.backward_m2.label = "backward condition on M2 for the adjoint";
  r.backward_perp.label = "backward condition on perp(M1) for the adjoint";
  run(r.forward_m1, M1, [&](const IndexSet& S, Index m) {
    return eq65_forward(op, S, m, sched_fwd, th);
  });
  auto backward = [&](const IndexSet& S, Index m) {
    return backward_condition(adj, S, m, sched_bwd, th);
  };
  run(r.backward_m2, M2, backward);
  r.perp_degenerate = P.degenerate();
  if (r.perp_degenerate) {
    r.backward_perp.note = "perp(M1) is degenerate";
  } else {
    run(r.backward_perp, P, backward);
  }
  r.m2_vs_perp = relate(M2, P);
  return r;
}

}  // namespace shiftdyn
