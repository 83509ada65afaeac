#pragma once

#include <optional>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "shiftdyn/constructors.hpp"
#include "shiftdyn/criteria.hpp"
#include "shiftdyn/orbit_lab.hpp"

namespace shiftdyn::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Config or report does not match the schema. The message starts with the
/// JSON path of the offending value.
class SchemaError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Strict view of a JSON object: every key must be consumed before
/// finish(), which rejects the leftovers.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path);

  const std::string& path() const noexcept { return path_; }
  bool has(const std::string& key) const;
  const Json& required(const std::string& key);
  const Json* optional(const std::string& key);

  double number(const std::string& key);
  std::optional<double> number_opt(const std::string& key);
  Index integer(const std::string& key);
  std::optional<Index> integer_opt(const std::string& key);
  std::string string(const std::string& key);
  std::optional<std::string> string_opt(const std::string& key);
  bool boolean_or(const std::string& key, bool fallback);

  std::string child(const std::string& key) const { return path_ + "." + key; }
  void finish() const;

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

[[noreturn]] void fail(const std::string& path, const std::string& message);

double as_number(const Json& j, const std::string& path);
Index as_integer(const Json& j, const std::string& path);

// Throws SchemaError unless schema_version is present and current.
void require_schema_version(ObjectReader& r);

// Non-finite values become the strings "NaN", "Infinity", "-Infinity".
Json number(double value);
Json number(const std::optional<double>& value);

Json encode(const WeightSequence& w);
WeightSequence decode_weights(const Json& j, Domain domain,
                              const std::string& path);

ShiftKind decode_kind(const Json& j, const std::string& path);
Json encode(const OperatorSpec& op);
OperatorSpec decode_operator(const Json& j, const std::string& path);

Json encode(const IndexSet& F);
IndexSet decode_index_set(const Json& j, Domain domain,
                          const std::string& path);

Json encode(const PowerSchedule& s);
PowerSchedule decode_schedule(const Json& j, const std::string& path);

// [[index, coefficient], ...]
Json encode(const SparseVector& v);
SparseVector decode_vector(const Json& j, const std::string& path);

Json encode(const CriterionThresholds& th);
// Missing keys keep their defaults. "satisfy"/"violate" are accepted as
// plain magnitudes in place of the *_log keys.
CriterionThresholds decode_thresholds(const Json& j, const std::string& path);

Json encode(const Verdict& v);
Verdict decode_verdict(const Json& j, const std::string& path);

Json encode(const ConditionResult& r);
Json encode(const Thm19Report& r);
Json encode(const Thm84Applicability& a);
Json encode(const GatedCondition& g);
Json encode(const DirectSumResult& r);
Json encode(const UnilateralResult& r);
Json encode(const DirectSumUnilateralResult& r);
Json encode(const Lemma35Report& r);

Json encode(const CriterionVector& cv);
Json encode(const DensityReport& r);
Json encode(const TransitivityResult& r);
Json encode(const PerpProbeReport& r);

Json encode(const HerreroParams& p);
/// Bundle plus ready-to-run check configs reproducing both verdicts.
Json encode(const HerreroOutcome& outcome);
Json encode(const Example2B& ex);

}  // namespace shiftdyn::io
