#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "accelscale/arch.hpp"
#include "accelscale/cost.hpp"
#include "accelscale/errors.hpp"

// Latency-aware compound scaling: multi-objective reward, phi fitting against
// latency targets, two-phase coefficient grid search, scaled model families,
// and family comparison.
namespace accelscale::lacs {

struct RewardConfig {
  double w = -0.09;              // latency exponent (must be < 0)
  double target_latency = 0.0;   // T, seconds (must be > 0)
  long long batch = 128;         // latency convention used by the search
};

// accuracy * (latency / T)^w
double reward(double accuracy, double latency, const RewardConfig& cfg);

// Stand-in for trained accuracy. The synthetic form is a smooth, monotone
// function of FLOPs only -- it enables end-to-end runs and relational
// property checks, and must never be read as a trained-accuracy predictor.
struct AccuracySurrogate {
  enum class Kind { synthetic, table };
  Kind kind = Kind::synthetic;
  std::function<double(const arch::ModelSpec&)> fn;

  double operator()(const arch::ModelSpec& m) const { return fn(m); }

  // accuracy = 1 - (1 - base_accuracy) * (flops/base_flops)^(-kappa),
  // clamped to [1e-3, 0.9999]. Defaults span 0.77 -> ~0.85 over 100x FLOPs.
  static AccuracySurrogate synthetic_flops(double base_flops,
                                           double base_accuracy = 0.77,
                                           double kappa = 0.0928);
  // Piecewise-linear in log(FLOPs) over user-provided (flops, accuracy)
  // points; clamped outside the covered range.
  static AccuracySurrogate table(
      std::vector<std::pair<double, double>> flops_accuracy);
};

struct PhiLevel {
  std::string name;
  std::optional<double> phi;               // exactly one of phi /
  std::optional<double> latency_target_s;  // latency_target_s is set
};

struct PhiSchedule {
  std::vector<PhiLevel> levels;
};

// Structural validation: non-empty, each level names exactly one of
// phi / latency_target_s, and explicit phi values are strictly increasing
// starting from 0. Raises InvalidPhi / ParseError.
void check_schedule(const PhiSchedule& schedule);

nlohmann::json schedule_to_json(const PhiSchedule& schedule);
PhiSchedule schedule_from_json(const nlohmann::json& j);
PhiSchedule load_schedule_file(const std::string& path);
void save_schedule_file(const PhiSchedule& schedule, const std::string& path);

// Fitted schedules shipped with the toolkit (B0..B7 ladders).
PhiSchedule lacs_gpu_schedule();
PhiSchedule lacs_tpu_schedule();
PhiSchedule single_objective_schedule();
const std::vector<std::string>& builtin_schedule_names();
PhiSchedule builtin_schedule(const std::string& name);

// Solves latency(scale(base, coeffs, phi)) = target for phi >= 0: bisection
// on the smooth real-dimension latency, then a local scan that minimizes the
// rounded-model latency error around the smooth solution (preferring the
// smooth solution on ties). Raises Unreachable when scaling cannot reach the
// target, NonMonotone when no rounded candidate lands within 25% of it.
double fit_phi(const arch::ModelSpec& base, const arch::ScalingCoeffs& coeffs,
               double target_latency, const cost::HardwareProfile& profile,
               long long batch = 128,
               const arch::RoundingPolicy& rounding = {});

struct GridAxis {
  double min = 1.0;
  double max = 1.0;
  double step = 0.05;
};

struct GridSpec {
  GridAxis alpha{1.0, 1.5, 0.05};
  GridAxis beta{1.0, 1.5, 0.05};
  GridAxis gamma{1.0, 1.3, 0.05};
  int refine_rounds = 2;  // half-step re-grids centered on the running best

  static GridSpec defaults() { return GridSpec{}; }
  static GridSpec singleton(const arch::ScalingCoeffs& c);
};

struct EvalEntry {
  arch::ScalingCoeffs coeffs;
  double phi = 0.0;
  double accuracy = 0.0;
  double latency = 0.0;  // seconds at the search batch (0 for FLOPs-only runs)
  double flops = 0.0;    // per-image MACs of the scaled model
  double reward = 0.0;
  bool feasible = true;  // FLOPs-budget check (single-objective runs)
};

struct SkippedEntry {
  arch::ScalingCoeffs coeffs;
  ErrorCode code = ErrorCode::Unreachable;
  std::string message;
};

struct CoeffSearchResult {
  arch::ScalingCoeffs best;
  double best_reward = 0.0;
  EvalEntry best_entry;
  arch::ScalingCoeffs phase1_best;       // best before any refinement round
  std::vector<EvalEntry> evaluated;      // merge-ordered, all phases
  std::vector<SkippedEntry> skipped;
};

// Two-phase search under reward(surrogate, latency): every lattice triplet is
// phi-fitted to cfg.target_latency, scaled, costed, and scored; refinement
// rounds re-grid at half step around the best. Ties resolve by higher
// accuracy, then lower latency, then lexicographically smaller triplet.
// Evaluations run in parallel but the log and result are deterministic.
CoeffSearchResult grid_search_coeffs(const arch::ModelSpec& base,
                                     const cost::HardwareProfile& profile,
                                     const AccuracySurrogate& surrogate,
                                     const RewardConfig& cfg,
                                     const GridSpec& grid);

// Accuracy-only comparator: maximizes the surrogate subject to the phi=1
// scaled model staying within flops_budget_ratio x base FLOPs. Ties resolve
// by lower FLOPs, then lexicographically smaller triplet.
CoeffSearchResult single_objective_coeffs(const arch::ModelSpec& base,
                                          const AccuracySurrogate& surrogate,
                                          double flops_budget_ratio,
                                          const GridSpec& grid);

struct FamilyLevel {
  std::string name;
  double phi = 0.0;
  arch::ModelSpec spec;
  cost::ModelCost cost;
  long long depth = 0;
  int resolution = 0;
  double width_mult = 1.0;
};

// Applies the schedule level by level (direct phi, or phi fitted to the
// level's latency target). The resolved phi ladder must start at 0 and be
// strictly increasing (InvalidPhi otherwise).
std::vector<FamilyLevel> scale_family(const arch::ModelSpec& base,
                                      const arch::ScalingCoeffs& coeffs,
                                      const PhiSchedule& schedule,
                                      const cost::HardwareProfile& profile,
                                      long long batch = 128);

struct FamilyLevelSummary {
  long long depth = 0;
  double width_mult = 1.0;
  int resolution = 0;
  double flops = 0.0;      // per image
  double intensity = 0.0;  // aggregate ops/byte
  double latency = 0.0;    // seconds at the family batch
};

struct ComparisonRow {
  std::string level;
  FamilyLevelSummary a;
  FamilyLevelSummary b;
  double speedup_a_over_b = 1.0;   // latency_b / latency_a
  double latency_rel_delta = 0.0;  // (latency_a - latency_b) / latency_b
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double geomean_speedup = 1.0;
};

// Scales both winning triplets through the same schedule and tabulates
// per-level dimensions, FLOPs, intensity, latency, and latency ratios.
ComparisonReport compare_scaling(const arch::ModelSpec& base,
                                 const CoeffSearchResult& result_a,
                                 const CoeffSearchResult& result_b,
                                 const PhiSchedule& schedule,
                                 const cost::HardwareProfile& profile,
                                 long long batch = 128);

// Convenience: reward config with T = target_mult x the base model's latency.
RewardConfig default_reward_for(const arch::ModelSpec& base,
                                const cost::HardwareProfile& profile,
                                double target_mult = 2.0, long long batch = 128);

// Synthetic surrogate anchored at the base model's FLOPs.
AccuracySurrogate default_surrogate_for(const arch::ModelSpec& base);

}  // namespace accelscale::lacs
