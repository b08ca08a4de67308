#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "accelscale/arch.hpp"
#include "accelscale/cost.hpp"
#include "accelscale/errors.hpp"
#include "accelscale/lacs.hpp"

// Small architecture search over per-stage block choices on a fixed skeleton:
// regularized evolution plus an exhaustive enumerator for small spaces, both
// scored with the latency-aware reward.
namespace accelscale::nas {

enum class ConvType { mbconv, fused_mbconv };
const char* conv_type_name(ConvType t);
ConvType conv_type_from_name(const std::string& name);

struct StageChoice {
  ConvType conv_type = ConvType::mbconv;
  int kernel = 3;
  int expansion = 6;
  double se_ratio = 0.25;
  arch::ActivationKind activation = arch::ActivationKind::relu;

  bool operator==(const StageChoice&) const = default;
};

struct SkeletonStage {
  long long out_c = 0;
  int stride = 1;
  int repeats = 1;
  // When set, the stage is excluded from the search and always realized with
  // this choice.
  std::optional<StageChoice> fixed_choice;

  bool operator==(const SkeletonStage&) const = default;
};

struct Skeleton {
  int input_resolution = 224;
  long long stem_out_c = 32;
  arch::ActivationKind stem_activation = arch::ActivationKind::relu;
  long long head_out_c = 1280;
  std::vector<SkeletonStage> stages;

  bool operator==(const Skeleton&) const = default;
};

struct Choices {
  std::vector<ConvType> conv_types;
  std::vector<int> kernels;
  std::vector<int> expansions;
  std::vector<double> se_ratios;
  std::vector<arch::ActivationKind> activations;
  // nullopt = no reshape stage; p = insert a block-2 reshape stage before
  // body stage p (the first stride-2 body stage at or after p drops to
  // stride 1 so total downsampling is preserved).
  std::vector<std::optional<int>> s2d_positions;

  bool operator==(const Choices&) const = default;
};

struct SearchSpaceConfig {
  Skeleton skeleton;
  Choices choices;
  int population = 64;
  int samples = 16;
  long long budget = 1024;  // total evaluations, counting the initial population
  unsigned long long seed = 1;
};

// Structural validation (ParseError / BadRange on violations).
void check_config(const SearchSpaceConfig& cfg);

// Seven-stage mobile skeleton with the full choice set: 32 variants per free
// stage and four reshape positions.
SearchSpaceConfig default_space();

nlohmann::json config_to_json(const SearchSpaceConfig& cfg);
SearchSpaceConfig config_from_json(const nlohmann::json& j);
SearchSpaceConfig load_config_file(const std::string& path);
void save_config_file(const SearchSpaceConfig& cfg, const std::string& path);

struct Candidate {
  std::vector<StageChoice> stages;  // one entry per skeleton body stage
  std::optional<int> s2d_position;

  bool operator==(const Candidate&) const = default;
};

// Number of distinct candidates (free-stage choice products x reshape
// positions).
unsigned long long space_size(const SearchSpaceConfig& cfg);

// Materializes a candidate as a model: stem, optional reshape stage, chosen
// body blocks, 1x1 head.
arch::ModelSpec realize(const SearchSpaceConfig& cfg, const Candidate& cand);

// Uniform draw over the space. All random choices use modulo draws from
// mt19937_64 so results are reproducible across standard libraries.
Candidate sample(const SearchSpaceConfig& cfg, unsigned long long seed);

// Re-draws exactly one mutable field (or the reshape position) to a different
// value. Raises NoMutationPossible when every field has a single option.
Candidate mutate(const SearchSpaceConfig& cfg, const Candidate& cand,
                 unsigned long long seed);

struct EvalRecord {
  long long index = 0;  // evaluation order (evolution) or decode index
  Candidate candidate;
  double accuracy = 0.0;
  double latency = 0.0;
  double flops = 0.0;
  double reward = 0.0;
};

// Keeps the set of (accuracy up, latency down) nondominated records.
class ParetoArchive {
 public:
  // Returns true if the record was kept (not dominated).
  bool insert(const EvalRecord& rec);
  const std::vector<EvalRecord>& entries() const { return entries_; }

 private:
  std::vector<EvalRecord> entries_;
};

struct SearchResult {
  EvalRecord best;
  std::vector<EvalRecord> pareto;
  std::vector<EvalRecord> log;  // capped at 100000 records
  long long evaluations = 0;
};

// Regularized evolution: seed a population, then repeatedly sample
// cfg.samples members, mutate the highest-reward one, and evict the oldest.
// Serial and deterministic for a given config.
SearchResult evolutionary_search(const SearchSpaceConfig& cfg,
                                 const cost::HardwareProfile& profile,
                                 const lacs::AccuracySurrogate& surrogate,
                                 const lacs::RewardConfig& reward_cfg);

// Scores every candidate in lexicographic decode order. Raises SpaceTooLarge
// above 1e6 candidates.
SearchResult exhaustive_search(const SearchSpaceConfig& cfg,
                               const cost::HardwareProfile& profile,
                               const lacs::AccuracySurrogate& surrogate,
                               const lacs::RewardConfig& reward_cfg);

}  // namespace accelscale::nas
