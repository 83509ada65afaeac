#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "shiftdyn/invariance.hpp"

namespace shiftdyn::cli {

namespace {

using io::Json;
using io::ObjectReader;

constexpr double kDefaultEps = 1e-2;
constexpr Index kDefaultIterations = 2000;
constexpr Index kDefaultWindow = 256;
constexpr Index kDefaultGridMembers = 2;
constexpr Index kDefaultProbeWindow = 64;
constexpr Index kDefaultExampleHorizon = 20;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class TraceCsv {
 public:
  void add(const std::string& series, const std::vector<Index>& powers,
           const Trace& trace) {
    for (std::size_t k = 0; k < trace.size(); ++k) {
      out_ << series << ',' << k + 1 << ',' << powers.at(k) << ','
           << fmt(trace[k]) << '\n';
    }
  }
  // Power n = k for traces sampled at every n = 1..N.
  void add(const std::string& series, const Trace& trace) {
    std::vector<Index> powers(trace.size());
    for (std::size_t k = 0; k < trace.size(); ++k) {
      powers[k] = static_cast<Index>(k + 1);
    }
    add(series, powers, trace);
  }
  std::string str() const { return "series,k,power,value\n" + out_.str(); }

 private:
  std::ostringstream out_;
};

std::string density_csv(const DensityReport& r) {
  std::ostringstream out;
  out << "id,hit,first_hit_power,achieved_distance,best_distance,best_power,"
         "placement,placement_distance\n";
  auto opt_index = [](const std::optional<Index>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  for (const TargetOutcome& o : r.targets) {
    out << o.id << ',' << (o.hit ? 1 : 0) << ',' << opt_index(o.first_hit_power)
        << ',' << (o.hit ? fmt(o.achieved_distance) : "") << ','
        << fmt(o.best_distance) << ',' << opt_index(o.best_power) << ','
        << opt_index(o.placement) << ','
        << (o.placement_distance ? fmt(*o.placement_distance) : "") << '\n';
  }
  return out.str();
}

CommandResult make_result(const std::string& command, int code, Json body,
                          std::string summary, std::string csv = {}) {
  CommandResult r;
  r.exit_code = code;
  r.report = {{"schema_version", io::kSchemaVersion},
              {"command", command},
              {"exit_code", code}};
  for (auto it = body.begin(); it != body.end(); ++it) {
    r.report[it.key()] = it.value();
  }
  r.summary = std::move(summary);
  r.csv = std::move(csv);
  return r;
}

CommandResult invalid(const std::string& command, const std::string& message) {
  return make_result(command, kExitInvalid, {{"error", message}},
                     command + ": invalid config: " + message);
}

CriterionThresholds thresholds_of(ObjectReader& r) {
  const Json* j = r.optional("thresholds");
  return j ? io::decode_thresholds(*j, r.child("thresholds"))
           : CriterionThresholds{};
}

std::string verdict_line(const std::string& what, const Verdict& v) {
  return what + ": " + to_string(v.status) + " (horizon " +
         std::to_string(v.horizon) + ", margin " + fmt_short(v.margin) + ")";
}

// Library errors caused by bad input map to exit 1.
template <class Body>
CommandResult guarded(const std::string& command, Body body) {
  try {
    return body();
  } catch (const io::SchemaError& e) {
    return invalid(command, e.what());
  } catch (const InvalidArgument& e) {
    return invalid(command, e.what());
  } catch (const DomainError& e) {
    return invalid(command, e.what());
  } catch (const PreconditionError& e) {
    return invalid(command, e.what());
  } catch (const nlohmann::json::exception& e) {
    return invalid(command, e.what());
  }
}

CommandResult condition_result(const std::string& criterion,
                               const ConditionResult& res) {
  TraceCsv csv;
  csv.add("plus", res.powers, res.trace_plus());
  csv.add("minus", res.powers, res.trace_minus());
  return make_result("check", exit_code_for(res.verdict.status),
                     {{"criterion", criterion}, {"result", io::encode(res)}},
                     verdict_line(criterion, res.verdict), csv.str());
}

CommandResult check_impl(const Json& config) {
  ObjectReader r(config, "config");
  io::require_schema_version(r);
  const std::string criterion = r.string("criterion");
  const CriterionThresholds th = thresholds_of(r);
  const OperatorSpec op =
      io::decode_operator(r.required("operator"), r.child("operator"));
  const IndexSet F = io::decode_index_set(r.required("subspace"), op.domain(),
                                          r.child("subspace"));
  auto schedule = [&] {
    return io::decode_schedule(r.required("schedule"), r.child("schedule"));
  };
  auto right_side = [&] {
    const OperatorSpec right = io::decode_operator(
        r.required("right_operator"), r.child("right_operator"));
    const IndexSet right_space = io::decode_index_set(
        r.required("right_subspace"), right.domain(), r.child("right_subspace"));
    return DirectSumSpec(op, right, F, right_space);
  };

  if (criterion == "eq65" || criterion == "bac") {
    const PowerSchedule sched = schedule();
    const Index m_i = r.integer("m_i");
    r.finish();
    return condition_result(criterion,
                            criterion == "eq65"
                                ? eq65_forward(op, F, m_i, sched, th)
                                : backward_condition(op, F, m_i, sched, th));
  }
  if (criterion == "thm19") {
    const double delta = r.number("delta");
    const Index q = r.integer("q");
    const Index n = r.integer("n");
    r.finish();
    const Thm19Report rep = thm19_finite_check(op, F, delta, q, n);
    const int code = rep.vacuous ? kExitInconclusive
                     : rep.pass  ? kExitSatisfied
                                 : kExitViolated;
    return make_result(
        "check", code, {{"criterion", criterion}, {"result", io::encode(rep)}},
        criterion + ": " +
            (rep.vacuous ? "vacuous" : rep.pass ? "pass" : "fail") + " (" +
            std::to_string(rep.entries.size()) + " indices at n = " +
            std::to_string(n) + ")");
  }
  if (criterion == "thm84" || criterion == "prop85") {
    const PowerSchedule sched = schedule();
    const Index window =
        r.integer_opt("probe_window").value_or(kDefaultProbeWindow);
    const std::optional<Index> m_i = r.integer_opt("m_i");
    r.finish();
    const GatedCondition g =
        criterion == "thm84"
            ? thm84_condition(op, F, sched, th, window, m_i)
            : prop85_condition(op, F, sched, th, window, m_i);
    Json body = {{"criterion", criterion}, {"result", io::encode(g)}};
    if (!g.result) {
      return make_result("check", kExitInconclusive, body,
                         criterion + ": not applicable (" +
                             g.applicability.note + ")");
    }
    CommandResult out = condition_result(criterion, *g.result);
    out.report["result"] = io::encode(g);
    return out;
  }
  if (criterion == "thm28") {
    const PowerSchedule sched = schedule();
    const Index m_i = r.integer("m_i");
    const Index h_p = r.integer("h_p");
    const DirectSumSpec ds = right_side();
    r.finish();
    const DirectSumResult res = direct_sum_condition(ds, m_i, h_p, sched, th);
    TraceCsv csv;
    csv.add("max_plus", res.left.powers, res.max_plus());
    csv.add("max_minus", res.left.powers, res.max_minus());
    return make_result("check", exit_code_for(res.verdict.status),
                       {{"criterion", criterion}, {"result", io::encode(res)}},
                       verdict_line(criterion, res.verdict), csv.str());
  }
  if (criterion == "unilateral") {
    const Index m_i = r.integer("m_i");
    const Index N = r.integer("N");
    r.finish();
    const UnilateralResult res = unilateral_limsup(op, F, m_i, N, th);
    TraceCsv csv;
    csv.add("partial", res.partial);
    csv.add("running", res.running);
    return make_result("check", exit_code_for(res.verdict.status),
                       {{"criterion", criterion}, {"result", io::encode(res)}},
                       verdict_line(criterion, res.verdict), csv.str());
  }
  if (criterion == "corollary") {
    const Index m_i = r.integer("m_i");
    const Index h_p = r.integer("h_p");
    const Index N = r.integer("N");
    const DirectSumSpec ds = right_side();
    r.finish();
    const DirectSumUnilateralResult res =
        direct_sum_unilateral(ds, m_i, h_p, N, th);
    TraceCsv csv;
    csv.add("min", res.min_trace);
    csv.add("running", res.running);
    return make_result("check", exit_code_for(res.verdict.status),
                       {{"criterion", criterion}, {"result", io::encode(res)}},
                       verdict_line(criterion, res.verdict), csv.str());
  }
  if (criterion == "lemma35") {
    const PowerSchedule sched = schedule();
    const Index m_i = r.integer("m_i");
    std::vector<Index> others;
    const Json& o = r.required("others");
    if (!o.is_array()) io::fail(r.child("others"), "expected an array");
    for (std::size_t i = 0; i < o.size(); ++i) {
      others.push_back(io::as_integer(
          o[i], r.child("others") + "[" + std::to_string(i) + "]"));
    }
    const double tol = r.number("tol");
    r.finish();
    const Lemma35Report rep = lemma35_probe(op, F, sched, m_i, others, tol);
    const int code = !rep.triggered ? kExitInconclusive
                     : rep.pass     ? kExitSatisfied
                                    : kExitViolated;
    TraceCsv csv;
    csv.add("anchor", {sched.powers().begin(), sched.powers().end()},
            rep.anchor_trace);
    return make_result(
        "check", code, {{"criterion", criterion}, {"result", io::encode(rep)}},
        criterion + ": " +
            (!rep.triggered ? "not triggered" : rep.pass ? "pass" : "fail") +
            " (" + std::to_string(rep.entries.size()) + " indices)",
        csv.str());
  }
  io::fail(r.child("criterion"), "unknown criterion '" + criterion + "'");
}

std::vector<SparseVector> decode_grid(const Json* j, const std::string& path,
                                      const IndexSet& F,
                                      const TruncationWindow& window) {
  if (!j) return default_grid(F, window, kDefaultGridMembers);
  ObjectReader r(*j, path);
  std::vector<SparseVector> grid;
  if (const Json* targets = r.optional("targets")) {
    if (!targets->is_array()) io::fail(r.child("targets"), "expected an array");
    for (std::size_t i = 0; i < targets->size(); ++i) {
      grid.push_back(io::decode_vector(
          (*targets)[i], r.child("targets") + "[" + std::to_string(i) + "]"));
    }
    if (r.has("members")) io::fail(path, "give 'targets' or 'members'");
  } else {
    const Index members = r.integer_opt("members").value_or(kDefaultGridMembers);
    if (members < 1) io::fail(r.child("members"), "must be >= 1");
    grid = default_grid(F, window, static_cast<std::size_t>(members));
  }
  r.finish();
  return grid;
}

TruncationWindow decode_window(const Json* j, const std::string& path,
                               Domain domain) {
  if (!j) return TruncationWindow::of_size(domain, kDefaultWindow);
  ObjectReader r(*j, path);
  if (r.has("size")) {
    const Index size = r.integer("size");
    r.finish();
    return TruncationWindow::of_size(domain, size);
  }
  const Index lo = r.integer("lo");
  const Index hi = r.integer("hi");
  r.finish();
  return TruncationWindow(domain, lo, hi);
}

CommandResult simulate_impl(const Json& config, const Options& options) {
  ObjectReader r(config, "config");
  io::require_schema_version(r);
  const CriterionThresholds th = thresholds_of(r);
  const OperatorSpec op =
      io::decode_operator(r.required("operator"), r.child("operator"));
  const IndexSet F = io::decode_index_set(r.required("subspace"), op.domain(),
                                          r.child("subspace"));
  const double eps = r.number_opt("eps").value_or(kDefaultEps);
  const Index n_iter = r.integer_opt("n_iter").value_or(kDefaultIterations);
  const TruncationWindow window =
      decode_window(r.optional("window"), r.child("window"), op.domain());
  const std::vector<SparseVector> grid =
      decode_grid(r.optional("grid"), r.child("grid"), F, window);
  std::optional<SparseVector> given_x;
  if (const Json* x = r.optional("x")) {
    given_x = io::decode_vector(*x, r.child("x"));
  }
  std::optional<PowerSchedule> sched;
  if (const Json* s = r.optional("schedule")) {
    sched = io::decode_schedule(*s, r.child("schedule"));
  }
  r.finish();

  if (!sched && !given_x) {
    std::vector<Index> powers =
        admissible_powers(op, F, std::max<Index>(n_iter, 64)).powers;
    if (powers.empty()) {
      throw PreconditionError("no power leaves the subspace invariant");
    }
    sched = PowerSchedule::explicit_powers(std::move(powers));
  }

  Json body = Json::object();
  SparseVector x;
  std::optional<std::vector<Index>> placements;
  bool refused = false;
  if (given_x) {
    x = *given_x;
  } else {
    try {
      CriterionVector cv = build_criterion_vector(op, F, grid, eps, *sched, th);
      body["criterion_vector"] = io::encode(cv);
      x = std::move(cv.x);
      placements = std::move(cv.placements);
    } catch (const ConditionRefused& e) {
      refused = true;
      body["refusal"] = {
          {"message", e.what()},
          {"verdict", e.verdict() ? io::encode(*e.verdict()) : Json(nullptr)}};
      // Geometric weights keep a symmetric grid from cancelling to zero.
      double scale = 1.0;
      for (const SparseVector& t : grid) {
        x.add_scaled(t, scale);
        scale /= 2.0;
      }
    } catch (const HorizonError& e) {
      return make_result("simulate", kExitInconclusive,
                         {{"error", e.what()}},
                         std::string("simulate: ") + e.what());
    }
  }

  const DensityReport rep = density_experiment(
      op, F, x, grid, eps, n_iter, window, placements, options.threads);
  body["x"] = io::encode(x);
  body["window"] = {{"lo", window.lo()}, {"hi", window.hi()}};
  body["density"] = io::encode(rep);

  std::size_t hits = 0;
  for (const TargetOutcome& o : rep.targets) hits += o.hit ? 1 : 0;
  const int code =
      !refused && hits == rep.targets.size() ? kExitSatisfied : kExitViolated;
  std::string summary = "simulate: " + std::to_string(hits) + "/" +
                        std::to_string(rep.targets.size()) +
                        " targets hit within " + std::to_string(n_iter) +
                        " iterations, leaked norm " +
                        fmt_short(rep.leaked_norm_max);
  if (refused) summary += " (criterion vector refused)";
  return make_result("simulate", code, std::move(body), summary,
                     density_csv(rep));
}

CommandResult construct_impl(const Json& config, const Options& options) {
  ObjectReader r(config, "config");
  io::require_schema_version(r);
  const std::string family = r.string("family");

  if (family == "herrero") {
    HerreroParams p;
    p.low = r.number("low");
    p.high = r.number("high");
    const Json& lengths = r.required("lengths");
    if (!lengths.is_array()) io::fail(r.child("lengths"), "expected an array");
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      p.lengths.push_back(io::as_integer(
          lengths[i], r.child("lengths") + "[" + std::to_string(i) + "]"));
    }
    p.period = r.integer_opt("period").value_or(2);
    p.thresholds = thresholds_of(r);
    p.parallel = r.boolean_or("parallel", options.threads > 1);
    r.finish();
    std::optional<HerreroOutcome> built;
    try {
      built = herrero_construction(p);
    } catch (const ConstructionError& e) {
      return make_result("construct", kExitViolated,
                         {{"family", family},
                          {"params", io::encode(p)},
                          {"verified", false},
                          {"diagnostic", e.what()}},
                         std::string("construct herrero: ") + e.what());
    }
    const HerreroOutcome& out = *built;
    const HerreroBundle& b = out.bundle;
    TraceCsv csv;
    csv.add("forward.plus", b.forward.powers, b.forward.trace_plus());
    csv.add("forward.minus", b.forward.powers, b.forward.trace_minus());
    csv.add("backward.plus", b.backward.powers, b.backward.trace_plus());
    csv.add("backward.minus", b.backward.powers, b.backward.trace_minus());
    std::string summary =
        "construct herrero: " +
        std::string(out.verified ? "verified" : out.diagnostic) + "; " +
        verdict_line("forward", b.forward.verdict) + "; " +
        verdict_line("backward", b.backward.verdict);
    return make_result("construct",
                       out.verified ? kExitSatisfied : kExitViolated,
                       io::encode(out), summary, csv.str());
  }

  if (family == "example_2b") {
    const Index N = r.integer_opt("N").value_or(kDefaultExampleHorizon);
    const CriterionThresholds th = thresholds_of(r);
    r.finish();
    const Example2B ex = paper_example_2B();
    const Index anchor = *ex.space.first_member(0, ex.space.modulus());
    const UnilateralResult res = unilateral_limsup(ex.op, ex.space, anchor, N, th);
    Json body = io::encode(ex);
    body["m_i"] = anchor;
    body["self_check"] = io::encode(res);
    body["verified"] = res.verdict.status == Status::kSatisfiedAtHorizon;
    TraceCsv csv;
    csv.add("partial", res.partial);
    csv.add("running", res.running);
    return make_result("construct", exit_code_for(res.verdict.status),
                       std::move(body),
                       verdict_line("construct example_2b", res.verdict),
                       csv.str());
  }

  const ShiftKind kind =
      r.has("kind") ? io::decode_kind(r.required("kind"), r.child("kind"))
                    : ShiftKind::kBilateralForward;
  FamilyParams params;
  if (family == "constant") {
    params = ConstantFamily{r.number("lambda")};
  } else if (family == "step") {
    params = StepFamily{r.number("pos"), r.number("neg")};
  } else if (family == "periodic") {
    const Json& values = r.required("values");
    if (!values.is_array()) io::fail(r.child("values"), "expected an array");
    PeriodicFamily p;
    for (std::size_t i = 0; i < values.size(); ++i) {
      p.values.push_back(io::as_number(
          values[i], r.child("values") + "[" + std::to_string(i) + "]"));
    }
    params = std::move(p);
  } else if (family == "block_interleaved") {
    BlockInterleavedFamily p;
    p.low = r.number("low");
    p.high = r.number("high");
    const Json& lengths = r.required("lengths");
    if (!lengths.is_array()) io::fail(r.child("lengths"), "expected an array");
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      p.lengths.push_back(io::as_integer(
          lengths[i], r.child("lengths") + "[" + std::to_string(i) + "]"));
    }
    params = std::move(p);
  } else {
    io::fail(r.child("family"), "unknown family '" + family + "'");
  }
  r.finish();
  // Structural self-check: the family builds a valid positive sequence on
  // the operator's domain; bounds are reported alongside.
  const OperatorSpec op(kind, make_family(params, domain_of(kind)));
  const WeightBounds b = op.weights().bounds();
  return make_result(
      "construct", kExitSatisfied,
      {{"family", family},
       {"operator", io::encode(op)},
       {"bounds", {{"inf", io::number(b.inf)}, {"sup", io::number(b.sup)}}},
       {"invertible", b.bounded_away()},
       {"verified", true}},
      "construct " + family + ": " + to_string(kind) + " operator built" +
          (b.bounded_away() ? " (invertible)" : ""));
}

}  // namespace

int exit_code_for(Status status) {
  switch (status) {
    case Status::kSatisfiedAtHorizon: return kExitSatisfied;
    case Status::kViolatedAtHorizon: return kExitViolated;
    case Status::kInconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

CommandResult run_check(const Json& config, const Options&) {
  return guarded("check", [&] { return check_impl(config); });
}

CommandResult run_simulate(const Json& config, const Options& options) {
  return guarded("simulate", [&] { return simulate_impl(config, options); });
}

CommandResult run_construct(const Json& config, const Options& options) {
  return guarded("construct", [&] { return construct_impl(config, options); });
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::SchemaError(path + ": cannot open config");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw io::SchemaError(path + ": malformed JSON: " + e.what());
  }
}

unsigned default_threads() {
  const char* env = std::getenv("SHIFTDYN_THREADS");
  if (!env) return 1;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || v == 0 || v > 256) return 1;
  return static_cast<unsigned>(v);
}

}  // namespace shiftdyn::cli
