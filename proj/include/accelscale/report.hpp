#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "accelscale/arch.hpp"
#include "accelscale/cost.hpp"
#include "accelscale/lacs.hpp"
#include "accelscale/nas.hpp"

// Deterministic report emission: CSV / JSON / JSON-lines / SVG with no
// timestamps or environment-dependent content, plus a hashed manifest so
// reruns can be compared byte for byte.
namespace accelscale::report {

// Shortest-form %.6g rendering used for every floating-point value that
// reaches a report, so CSV and JSON renderings of the same quantity agree.
std::string fmt6(double v);
// The double obtained by parsing fmt6(v); JSON reports store this value.
double round6(double v);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

struct ReportFile {
  std::string name;
  std::string content;
};

struct ReportBundle {
  std::vector<ReportFile> files;

  void add(std::string name, std::string content);
  // {"files": [{"name", "fnv1a64"}]} sorted by name; excludes the manifest.
  nlohmann::json manifest() const;
  // Writes every file plus manifest.json into dir (created if needed).
  void write_to(const std::string& dir) const;
};

// Per-stage cost table. CSV columns:
//   stage,op,W,Q_bytes,I,regime,latency_s
// with a trailing "total" row. W and Q_bytes are exact integers.
std::string cost_table_csv(const cost::ModelCost& mc);
nlohmann::json cost_table_json(const std::string& model_name,
                               const std::string& profile_name,
                               const cost::ModelCost& mc);

// Scaled family. CSV columns:
//   level,phi,depth,resolution,width_mult,flops,intensity,latency_s
// flops is per-image MACs.
std::string family_csv(const std::vector<lacs::FamilyLevel>& family,
                       long long batch);
nlohmann::json family_json(const std::string& model_name,
                           const std::string& profile_name,
                           const arch::ScalingCoeffs& coeffs,
                           const std::vector<lacs::FamilyLevel>& family,
                           long long batch);

// Family summary parsed back from family_json output (consumed by compare).
struct FamilySummaryFile {
  std::string model;
  std::string profile;
  long long batch = 1;
  arch::ScalingCoeffs coeffs;
  std::vector<std::pair<std::string, lacs::FamilyLevelSummary>> levels;
};
FamilySummaryFile family_summary_from_json(const nlohmann::json& j);
FamilySummaryFile load_family_summary(const std::string& path);

// Zips two family summaries into a comparison. Raises LevelMismatch when the
// level ladders differ in length or names.
lacs::ComparisonReport compare_from_summaries(const FamilySummaryFile& a,
                                              const FamilySummaryFile& b);

// CSV columns:
//   level,depth_a,resolution_a,latency_a_s,depth_b,resolution_b,latency_b_s,
//   speedup_a_over_b
// with a trailing geomean row.
std::string compare_csv(const lacs::ComparisonReport& report);
nlohmann::json compare_json(const lacs::ComparisonReport& report);

nlohmann::json candidate_json(const nas::Candidate& cand);

// One JSON object per line: {"index", "candidate", "accuracy", "latency_s",
// "reward"}.
std::string search_log_jsonl(const std::vector<nas::EvalRecord>& log);

// CSV columns: index,accuracy,latency_s,flops,reward -- sorted by latency.
std::string pareto_csv(std::vector<nas::EvalRecord> entries);

nlohmann::json search_result_json(const nas::SearchResult& result);

struct RooflineModelPoint {
  std::string label;
  double intensity = 0.0;  // ops per byte
  double achieved = 0.0;   // ops per second (W / latency)
};

// Log-log roofline chart: one two-segment polyline per profile (memory slope
// up to the ridge, flat peak after it), decade gridlines on both axes, and a
// labeled marker per model point. Pure function of its inputs.
std::string roofline_svg(const std::vector<cost::HardwareProfile>& profiles,
                         const std::vector<RooflineModelPoint>& points);

}  // namespace accelscale::report
