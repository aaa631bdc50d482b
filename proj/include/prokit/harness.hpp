// Task files, reports and family sweeps. A task file is a JSON document
// (comments allowed) with sections schema, ring, elements, modules,
// sequences, analysis, bounds and sweep; docs/task_format.md describes it.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "prokit/analysis.hpp"

namespace prokit {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::string field);
  std::size_t line() const { return line_; }  // 1-based, 0 when unknown
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class UnknownReference : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Bounds {
  unsigned n_max = 3;
  unsigned m_max = 0;  // 0: default_m_max per analysis
  unsigned i_max = 0;  // 0: sequence length
};

/// One requested analysis with every reference resolved.
struct AnalysisSpec {
  std::string kind;
  std::string label;
  std::string profile = "lipman";  // profile kind for kind == "profile"
  FgModule module;
  FgModule other;  // second module for cech_tor_compare
  std::vector<Vec> xs;
  std::vector<Vec> covering;  // empty: maximal mode
  std::vector<unsigned> exponents;
  std::vector<unsigned> degrees;
  Vec element;  // y for regular_then_bounded, x for cartier
  CriterionMode mode = CriterionMode::proregular;
  std::string battery;
  std::size_t count = 0;
  unsigned level = 1;  // n for colon_identification
  Bounds bounds;
};

enum class Family { truncated_two_power, truncated_polynomial };

struct SweepSpec {
  Family family = Family::truncated_two_power;
  unsigned from = 2, to = 6;
  Int modulus = 2;                     // coefficient ring Z/q for truncated_polynomial
  std::vector<std::string> sequence;   // names in the family ring: "x", "one"
  std::string profile = "lipman";
  std::string track = "entry";         // entry | all | torsion_index
  unsigned i = 1, n = 1;               // tracked entry
  std::string expect;                  // "", divergent or bounded; asserted when set
  Bounds bounds;
};

struct TaskSpec {
  Json source;  // the document as parsed
  RingPtr ring;
  std::vector<AnalysisSpec> analyses;
  std::optional<SweepSpec> sweep;
  Bounds bounds;
};

TaskSpec parse_spec(const std::string& text);

struct ReportError {
  std::string type;
  std::string message;
  bool operator==(const ReportError&) const = default;
};

struct ReportEntry {
  std::string kind;
  std::string label;
  std::optional<CheckOutcome> outcome;
  std::optional<ReportError> error;
  Status status() const;
  bool operator==(const ReportEntry&) const = default;
};

struct SweepPoint {
  unsigned parameter = 0;
  std::vector<std::pair<std::string, Profile>> profiles;
  std::vector<long> tracked;  // -1 for an inconclusive entry
  double seconds = 0;
  bool operator==(const SweepPoint&) const = default;
};

struct SweepResult {
  std::string family;
  std::string profile;
  std::string track;
  std::vector<std::string> sequence;
  std::vector<SweepPoint> points;
  bool divergent = false;  // every tracked series strictly increasing (some series for track "all")
  bool bounded = false;    // every tracked series constant
  std::string expect;
  bool operator==(const SweepResult&) const = default;
};

struct Report {
  std::string command = "check";
  std::uint64_t seed = 0;
  Json task;
  std::vector<ReportEntry> entries;
  std::optional<SweepResult> sweep;
  double seconds = 0;

  Status status() const;
  int exit_code() const;  // 0 pass, 1 counterexample, 2 inconclusive
  bool operator==(const Report&) const = default;
};

struct RunOptions {
  std::uint64_t seed = 0;
  unsigned m_max = 0;  // nonzero overrides the task bounds
  int jobs = 0;
  bool analyses = true;
  bool sweep = true;
  bool profiles_only = false;
};

Report run_task(const TaskSpec& t, const RunOptions& options = {});
SweepResult family_sweep(const SweepSpec& s, int jobs = 0);

/// Flags for one tracked series: {strictly increasing at every step, constant}.
std::pair<bool, bool> series_flags(const std::vector<long>& values);

/// Checks the ring section against the ring axioms without running analyses.
Report check_axioms(const std::string& text);

enum class Format { json, csv, text };
std::optional<Format> format_from_string(const std::string& s);

std::string emit_report(const Report& r, Format f);
/// The JSON form without the timing section; identical across reruns.
std::string report_body(const Report& r);
Json report_to_json(const Report& r, bool with_timing = true);
Report report_from_json(const Json& j);

std::string status_name(Status s);

}  // namespace prokit
