#include "shiftdyn/json_io.hpp"

#include <cmath>
#include <limits>

namespace shiftdyn::io {

namespace {

Json trace_json(const Trace& t) {
  Json a = Json::array();
  for (double v : t) a.push_back(number(v));
  return a;
}

Json index_array(const std::vector<Index>& v) {
  Json a = Json::array();
  for (Index n : v) a.push_back(n);
  return a;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json bounds_json(const WeightBounds& b) {
  return {{"inf", number(b.inf)}, {"sup", number(b.sup)}};
}

const Json& expect_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

Trace decode_trace(const Json& j, const std::string& path) {
  Trace t;
  for (std::size_t i = 0; i < expect_array(j, path).size(); ++i) {
    t.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return t;
}

std::vector<Index> decode_indices(const Json& j, const std::string& path) {
  std::vector<Index> out;
  for (std::size_t i = 0; i < expect_array(j, path).size(); ++i) {
    out.push_back(as_integer(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Status decode_status(const std::string& s, const std::string& path) {
  for (Status st : {Status::kSatisfiedAtHorizon, Status::kViolatedAtHorizon,
                    Status::kInconclusive}) {
    if (s == to_string(st)) return st;
  }
  fail(path, "unknown status '" + s + "'");
}

}  // namespace

void fail(const std::string& path, const std::string& message) {
  throw SchemaError(path + ": " + message);
}

ObjectReader::ObjectReader(const Json& j, std::string path)
    : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) fail(path_, "expected an object");
}

bool ObjectReader::has(const std::string& key) const {
  return j_.contains(key);
}

const Json& ObjectReader::required(const std::string& key) {
  auto it = j_.find(key);
  if (it == j_.end()) fail(path_, "missing field '" + key + "'");
  seen_.insert(key);
  return *it;
}

const Json* ObjectReader::optional(const std::string& key) {
  auto it = j_.find(key);
  if (it == j_.end()) return nullptr;
  seen_.insert(key);
  return &*it;
}

double ObjectReader::number(const std::string& key) {
  return as_number(required(key), child(key));
}

std::optional<double> ObjectReader::number_opt(const std::string& key) {
  const Json* j = optional(key);
  if (!j) return std::nullopt;
  return as_number(*j, child(key));
}

Index ObjectReader::integer(const std::string& key) {
  return as_integer(required(key), child(key));
}

std::optional<Index> ObjectReader::integer_opt(const std::string& key) {
  const Json* j = optional(key);
  if (!j) return std::nullopt;
  return as_integer(*j, child(key));
}

std::string ObjectReader::string(const std::string& key) {
  const Json& j = required(key);
  if (!j.is_string()) fail(child(key), "expected a string");
  return j.get<std::string>();
}

std::optional<std::string> ObjectReader::string_opt(const std::string& key) {
  if (!has(key)) return std::nullopt;
  return string(key);
}

bool ObjectReader::boolean_or(const std::string& key, bool fallback) {
  const Json* j = optional(key);
  if (!j) return fallback;
  if (!j->is_boolean()) fail(child(key), "expected true or false");
  return j->get<bool>();
}

void ObjectReader::finish() const {
  for (auto it = j_.begin(); it != j_.end(); ++it) {
    if (!seen_.count(it.key())) fail(path_, "unknown field '" + it.key() + "'");
  }
}

double as_number(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "Infinity") return HUGE_VAL;
    if (s == "-Infinity") return -HUGE_VAL;
    if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
  }
  fail(path, "expected a number");
}

Index as_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<Index>();
}

void require_schema_version(ObjectReader& r) {
  const Index v = r.integer("schema_version");
  if (v != kSchemaVersion) {
    fail(r.child("schema_version"),
         "unsupported version " + std::to_string(v) + ", expected " +
             std::to_string(kSchemaVersion));
  }
}

Json number(double value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "Infinity" : "-Infinity";
  return value;
}

Json number(const std::optional<double>& value) {
  return value ? number(*value) : Json(nullptr);
}

// ---- weights and operators -------------------------------------------------

Json encode(const WeightSequence& w) {
  Json j = std::visit(
      [](const auto& rule) -> Json {
        using R = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<R, ConstantRule>) {
          return {{"rule", "constant"}, {"lambda", rule.lambda}};
        } else if constexpr (std::is_same_v<R, StepRule>) {
          return {{"rule", "step"}, {"pos", rule.pos}, {"neg", rule.neg}};
        } else if constexpr (std::is_same_v<R, PeriodicRule>) {
          return {{"rule", "periodic"}, {"values", rule.values}};
        } else if constexpr (std::is_same_v<R, BlockInterleavedRule>) {
          return {{"rule", "block_interleaved"},
                  {"low", rule.low},
                  {"high", rule.high},
                  {"block_lengths", index_array(rule.block_lengths)}};
        } else {
          Json entries = Json::array();
          for (const auto& [n, v] : rule.entries) entries.push_back({n, v});
          return {{"rule", "table"},
                  {"entries", entries},
                  {"fallback", encode(*rule.fallback)}};
        }
      },
      w.rule());
  if (w.shift() != 0) j["shift"] = w.shift();
  return j;
}

WeightSequence decode_weights(const Json& j, Domain domain,
                              const std::string& path) {
  ObjectReader r(j, path);
  const std::string rule = r.string("rule");
  const Index shift = r.integer_opt("shift").value_or(0);
  std::optional<WeightSequence::Rule> out;
  if (rule == "constant") {
    out = ConstantRule{r.number("lambda")};
  } else if (rule == "step") {
    out = StepRule{r.number("pos"), r.number("neg")};
  } else if (rule == "periodic") {
    PeriodicRule p;
    p.values = decode_trace(r.required("values"), r.child("values"));
    out = p;
  } else if (rule == "block_interleaved") {
    out = BlockInterleavedRule{
        r.number("low"), r.number("high"),
        decode_indices(r.required("block_lengths"), r.child("block_lengths"))};
  } else if (rule == "table") {
    TableRule t;
    const Json& entries = expect_array(r.required("entries"),
                                       r.child("entries"));
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string p = r.child("entries") + "[" + std::to_string(i) + "]";
      if (!entries[i].is_array() || entries[i].size() != 2) {
        fail(p, "expected [index, weight]");
      }
      const Index n = as_integer(entries[i][0], p + "[0]");
      if (!t.entries.emplace(n, as_number(entries[i][1], p + "[1]")).second) {
        fail(p, "duplicate index " + std::to_string(n));
      }
    }
    t.fallback = std::make_shared<const WeightSequence>(
        decode_weights(r.required("fallback"), domain, r.child("fallback")));
    out = std::move(t);
  } else {
    fail(r.child("rule"), "unknown rule '" + rule + "'");
  }
  r.finish();
  try {
    return WeightSequence(std::move(*out), domain, shift);
  } catch (const InvalidArgument& e) {
    fail(path, e.what());
  }
}

ShiftKind decode_kind(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected an operator kind string");
  const std::string s = j.get<std::string>();
  for (ShiftKind k : {ShiftKind::kBilateralForward, ShiftKind::kBilateralBackward,
                      ShiftKind::kUnilateralForward,
                      ShiftKind::kUnilateralBackward}) {
    if (s == to_string(k)) return k;
  }
  fail(path, "unknown operator kind '" + s + "'");
}

Json encode(const OperatorSpec& op) {
  return {{"kind", to_string(op.kind())}, {"weights", encode(op.weights())}};
}

OperatorSpec decode_operator(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  const ShiftKind kind = decode_kind(r.required("kind"), r.child("kind"));
  WeightSequence w =
      decode_weights(r.required("weights"), domain_of(kind), r.child("weights"));
  r.finish();
  return OperatorSpec(kind, std::move(w));
}

// ---- index sets, schedules, vectors, thresholds ----------------------------

Json encode(const IndexSet& F) {
  return {{"modulus", F.modulus()},
          {"residues", index_array(F.residues())},
          {"includes", index_array({F.includes().begin(), F.includes().end()})},
          {"excludes", index_array({F.excludes().begin(), F.excludes().end()})}};
}

IndexSet decode_index_set(const Json& j, Domain domain,
                          const std::string& path) {
  ObjectReader r(j, path);
  const Index modulus = r.integer("modulus");
  const std::vector<Index> residues =
      decode_indices(r.required("residues"), r.child("residues"));
  std::set<Index> includes, excludes;
  if (const Json* inc = r.optional("includes")) {
    for (Index m : decode_indices(*inc, r.child("includes"))) includes.insert(m);
  }
  if (const Json* exc = r.optional("excludes")) {
    for (Index m : decode_indices(*exc, r.child("excludes"))) excludes.insert(m);
  }
  r.finish();
  try {
    return IndexSet(modulus, residues, domain, includes, excludes);
  } catch (const InvalidArgument& e) {
    fail(path, e.what());
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

Json encode(const PowerSchedule& s) {
  if (s.stride()) {
    return {{"stride", *s.stride()},
            {"count", static_cast<Index>(s.size())}};
  }
  return {{"powers", index_array({s.powers().begin(), s.powers().end()})}};
}

PowerSchedule decode_schedule(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  try {
    if (r.has("powers")) {
      auto powers = decode_indices(r.required("powers"), r.child("powers"));
      r.finish();
      return PowerSchedule::explicit_powers(std::move(powers));
    }
    const Index stride = r.integer("stride");
    const Index count = r.integer("count");
    r.finish();
    return PowerSchedule::arithmetic(stride, count);
  } catch (const InvalidArgument& e) {
    if (dynamic_cast<const SchemaError*>(&e)) throw;
    fail(path, e.what());
  }
}

Json encode(const SparseVector& v) {
  Json a = Json::array();
  for (const auto& [m, c] : v) a.push_back({m, number(c)});
  return a;
}

SparseVector decode_vector(const Json& j, const std::string& path) {
  SparseVector v;
  for (std::size_t i = 0; i < expect_array(j, path).size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) fail(p, "expected [index, value]");
    v.add(as_integer(j[i][0], p + "[0]"), as_number(j[i][1], p + "[1]"));
  }
  return v;
}

Json encode(const CriterionThresholds& th) {
  return {{"satisfy_log", number(th.satisfy_log)},
          {"violate_log", number(th.violate_log)},
          {"window", th.window}};
}

CriterionThresholds decode_thresholds(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  CriterionThresholds th;
  auto log_pair = [&](const char* log_key, const char* plain_key,
                      double& slot) {
    const auto as_log = r.number_opt(log_key);
    const auto plain = r.number_opt(plain_key);
    if (as_log && plain) {
      fail(path, std::string("give either '") + log_key + "' or '" +
                     plain_key + "', not both");
    }
    if (as_log) slot = *as_log;
    if (plain) {
      if (!(*plain > 0.0)) fail(r.child(plain_key), "must be positive");
      slot = std::log(*plain);
    }
  };
  log_pair("satisfy_log", "satisfy", th.satisfy_log);
  log_pair("violate_log", "violate", th.violate_log);
  if (auto w = r.integer_opt("window")) th.window = static_cast<int>(*w);
  r.finish();
  try {
    th.validate();
  } catch (const InvalidArgument& e) {
    fail(path, e.what());
  }
  return th;
}

// ---- verdicts and criteria reports -----------------------------------------

Json encode(const Verdict& v) {
  Json traces = Json::array();
  for (const Trace& t : v.traces) traces.push_back(trace_json(t));
  return {{"status", to_string(v.status)},
          {"rule", to_string(v.rule)},
          {"horizon", v.horizon},
          {"margin", number(v.margin)},
          {"thresholds", encode(v.thresholds)},
          {"structural_bound", number(v.structural_bound)},
          {"traces", traces}};
}

Verdict decode_verdict(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  Verdict v;
  v.status = decode_status(r.string("status"), r.child("status"));
  const std::string rule = r.string("rule");
  if (rule == "decay") {
    v.rule = DecisionRule::kDecay;
  } else if (rule == "growth") {
    v.rule = DecisionRule::kGrowth;
  } else {
    fail(r.child("rule"), "unknown rule '" + rule + "'");
  }
  v.horizon = static_cast<int>(r.integer("horizon"));
  v.margin = r.number("margin");
  v.thresholds = decode_thresholds(r.required("thresholds"),
                                   r.child("thresholds"));
  const Json& bound = r.required("structural_bound");
  if (!bound.is_null()) {
    v.structural_bound = as_number(bound, r.child("structural_bound"));
  }
  const Json& traces = expect_array(r.required("traces"), r.child("traces"));
  for (std::size_t i = 0; i < traces.size(); ++i) {
    v.traces.push_back(decode_trace(
        traces[i], r.child("traces") + "[" + std::to_string(i) + "]"));
  }
  r.finish();
  return v;
}

Json encode(const ConditionResult& r) {
  return {{"powers", index_array(r.powers)},
          {"bounds", bounds_json(r.bounds)},
          {"invertible", r.invertible},
          {"verdict", encode(r.verdict)}};
}

Json encode(const Thm19Report& r) {
  Json entries = Json::array();
  for (const Thm19Entry& e : r.entries) {
    entries.push_back({{"m_j", e.m_j},
                       {"plus_log", number(e.plus_log)},
                       {"minus_log", number(e.minus_log)},
                       {"plus_margin", number(e.plus_margin)},
                       {"minus_margin", number(e.minus_margin)},
                       {"pass", e.pass}});
  }
  return {{"delta", number(r.delta)}, {"q", r.q},         {"n", r.n},
          {"entries", entries},       {"vacuous", r.vacuous}, {"pass", r.pass}};
}

Json encode(const Thm84Applicability& a) {
  return {{"applicable", a.applicable},
          {"b", number(a.b)},
          {"witness", optional_json(a.witness)},
          {"probe_window", a.probe_window},
          {"note", a.note}};
}

Json encode(const GatedCondition& g) {
  return {{"applicability", encode(g.applicability)},
          {"result", g.result ? encode(*g.result) : Json(nullptr)}};
}

Json encode(const DirectSumResult& r) {
  return {{"left", encode(r.left)},
          {"right", encode(r.right)},
          {"verdict", encode(r.verdict)}};
}

Json encode(const UnilateralResult& r) {
  return {{"partial", trace_json(r.partial)},
          {"running", trace_json(r.running)},
          {"admissible", index_array(r.admissible)},
          {"hypothesis_holds", r.hypothesis_holds},
          {"verdict", encode(r.verdict)}};
}

Json encode(const DirectSumUnilateralResult& r) {
  return {{"left", encode(r.left)},
          {"right", encode(r.right)},
          {"min_trace", trace_json(r.min_trace)},
          {"running", trace_json(r.running)},
          {"verdict", encode(r.verdict)}};
}

Json encode(const Lemma35Report& r) {
  Json entries = Json::array();
  for (const Lemma35Entry& e : r.entries) {
    entries.push_back({{"m_r", e.m_r},
                       {"final_log", number(e.final_log)},
                       {"distortion", number(e.distortion)},
                       {"pass", e.pass}});
  }
  return {{"anchor_trace", trace_json(r.anchor_trace)},
          {"triggered", r.triggered},
          {"log_tol", number(r.log_tol)},
          {"entries", entries},
          {"pass", r.pass}};
}

// ---- orbit lab -------------------------------------------------------------

Json encode(const CriterionVector& cv) {
  return {{"x", encode(cv.x)},
          {"placements", index_array(cv.placements)},
          {"tail_bound", number(cv.tail_bound)},
          {"target_bounds", trace_json(cv.target_bounds)},
          {"condition", cv.condition ? encode(*cv.condition) : Json(nullptr)}};
}

Json encode(const DensityReport& r) {
  Json targets = Json::array();
  for (const TargetOutcome& o : r.targets) {
    targets.push_back({{"id", o.id},
                       {"hit", o.hit},
                       {"first_hit_power", optional_json(o.first_hit_power)},
                       {"achieved_distance",
                        o.hit ? number(o.achieved_distance) : Json(nullptr)},
                       {"best_distance", number(o.best_distance)},
                       {"best_power", optional_json(o.best_power)},
                       {"placement", optional_json(o.placement)},
                       {"placement_distance", number(o.placement_distance)}});
  }
  return {{"eps", number(r.eps)},
          {"hit_rate", number(r.hit_rate)},
          {"leaked_norm_max", number(r.leaked_norm_max)},
          {"iterations", r.iterations},
          {"admissible_samples", r.admissible_samples},
          {"targets", targets}};
}

Json encode(const TransitivityResult& r) {
  Json j = {{"found", r.found},
            {"powers_searched", r.powers_searched},
            {"points_searched", r.points_searched}};
  if (r.found) {
    j["z"] = encode(r.z);
    j["n"] = r.n;
    j["x_distance"] = number(r.x_distance);
    j["y_distance"] = number(r.y_distance);
  }
  return j;
}

Json encode(const PerpProbeReport& r) {
  auto entry = [](const PerpProbeEntry& e) {
    return Json{{"label", e.label},
                {"anchor", optional_json(e.anchor)},
                {"result", e.result ? encode(*e.result) : Json(nullptr)},
                {"note", e.note}};
  };
  return {{"forward_m1", entry(r.forward_m1)},
          {"backward_m2", entry(r.backward_m2)},
          {"backward_perp", entry(r.backward_perp)},
          {"perp_degenerate", r.perp_degenerate},
          {"m2_vs_perp", to_string(r.m2_vs_perp)}};
}

// ---- constructors ----------------------------------------------------------

Json encode(const HerreroParams& p) {
  return {{"low", number(p.low)},
          {"high", number(p.high)},
          {"lengths", index_array(p.lengths)},
          {"period", p.period},
          {"thresholds", encode(p.thresholds)},
          {"parallel", p.parallel}};
}

Json encode(const HerreroOutcome& outcome) {
  const HerreroBundle& b = outcome.bundle;
  auto check = [&](const char* criterion, const OperatorSpec& op,
                   const IndexSet& F, const PowerSchedule& s, Index m_i) {
    return Json{{"schema_version", kSchemaVersion},
                {"criterion", criterion},
                {"operator", encode(op)},
                {"subspace", encode(F)},
                {"schedule", encode(s)},
                {"m_i", m_i},
                {"thresholds", encode(b.params.thresholds)}};
  };
  return {{"schema_version", kSchemaVersion},
          {"family", "herrero"},
          {"params", encode(b.params)},
          {"operator", encode(b.op)},
          {"adjoint", encode(b.adjoint)},
          {"m1", encode(b.m1)},
          {"m2", encode(b.m2)},
          {"anchor_fwd", b.anchor_fwd},
          {"anchor_bwd", b.anchor_bwd},
          {"sched_fwd", encode(b.sched_fwd)},
          {"sched_bwd", encode(b.sched_bwd)},
          {"forward", encode(b.forward)},
          {"backward", encode(b.backward)},
          {"verified", outcome.verified},
          {"diagnostic", outcome.diagnostic},
          {"checks",
           {check("eq65", b.op, b.m1, b.sched_fwd, b.anchor_fwd),
            check("bac", b.adjoint, b.m2, b.sched_bwd, b.anchor_bwd)}}};
}

Json encode(const Example2B& ex) {
  return {{"schema_version", kSchemaVersion},
          {"family", "example_2b"},
          {"operator", encode(ex.op)},
          {"subspace", encode(ex.space)}};
}

}  // namespace shiftdyn::io
