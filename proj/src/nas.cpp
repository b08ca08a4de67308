#include "accelscale/nas.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <fstream>
#include <random>
#include <set>

namespace accelscale::nas {

using arch::ActivationKind;
using arch::ModelSpec;
using arch::Op;
using arch::Stage;
using nlohmann::json;

namespace {

constexpr long long kExhaustiveCap = 1000000;
constexpr std::size_t kLogCap = 100000;

// Deterministic bounded draw; the modulo bias is irrelevant for the tiny
// value sets used here and keeps results identical across standard libraries.
std::size_t draw(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

}  // namespace

const char* conv_type_name(ConvType t) {
  return t == ConvType::mbconv ? "mbconv" : "fused_mbconv";
}

ConvType conv_type_from_name(const std::string& name) {
  if (name == "mbconv") return ConvType::mbconv;
  if (name == "fused_mbconv") return ConvType::fused_mbconv;
  raise(ErrorCode::ParseError, "unknown conv type: " + name);
}

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

void check_config(const SearchSpaceConfig& cfg) {
  if (cfg.skeleton.stages.empty())
    raise(ErrorCode::ParseError, "skeleton has no body stages");
  if (cfg.skeleton.input_resolution < 1 || cfg.skeleton.stem_out_c < 1 ||
      cfg.skeleton.head_out_c < 1)
    raise(ErrorCode::ParseError, "skeleton dimensions must be positive");
  for (std::size_t i = 0; i < cfg.skeleton.stages.size(); ++i) {
    const SkeletonStage& st = cfg.skeleton.stages[i];
    if (st.out_c < 1)
      raise(ErrorCode::ParseError,
            "skeleton stage " + std::to_string(i) + " needs out_c >= 1");
    if (st.stride != 1 && st.stride != 2)
      raise(ErrorCode::ParseError,
            "skeleton stage " + std::to_string(i) + " stride must be 1 or 2");
    if (st.repeats < 1)
      raise(ErrorCode::ParseError,
            "skeleton stage " + std::to_string(i) + " needs repeats >= 1");
  }
  const auto require_nonempty = [](bool ok, const char* what) {
    if (!ok) raise(ErrorCode::ParseError,
                   std::string("choice set '") + what + "' is empty");
  };
  require_nonempty(!cfg.choices.conv_types.empty(), "conv_types");
  require_nonempty(!cfg.choices.kernels.empty(), "kernels");
  require_nonempty(!cfg.choices.expansions.empty(), "expansions");
  require_nonempty(!cfg.choices.se_ratios.empty(), "se_ratios");
  require_nonempty(!cfg.choices.activations.empty(), "activations");
  require_nonempty(!cfg.choices.s2d_positions.empty(), "s2d_positions");
  for (int k : cfg.choices.kernels)
    if (k != 1 && k != 3 && k != 5)
      raise(ErrorCode::ParseError, "kernel choice must be 1, 3, or 5");
  for (int e : cfg.choices.expansions)
    if (e != 1 && e != 6)
      raise(ErrorCode::ParseError, "expansion choice must be 1 or 6");
  for (double se : cfg.choices.se_ratios)
    if (!(se >= 0.0) || !(se <= 1.0))
      raise(ErrorCode::ParseError, "se_ratio choice must be in [0, 1]");
  for (const std::optional<int>& p : cfg.choices.s2d_positions)
    if (p && (*p < 0 ||
              *p >= static_cast<int>(cfg.skeleton.stages.size())))
      raise(ErrorCode::ParseError,
            "s2d position " + std::to_string(*p) +
                " is outside the body stage range");
  if (cfg.population < 2)
    raise(ErrorCode::BadRange, "population must be >= 2");
  if (cfg.samples < 1 || cfg.samples > cfg.population)
    raise(ErrorCode::BadRange, "samples must be in [1, population]");
  if (cfg.budget < cfg.population)
    raise(ErrorCode::BadRange,
          "budget must cover the initial population (budget >= population)");
}

SearchSpaceConfig default_space() {
  SearchSpaceConfig cfg;
  cfg.skeleton.input_resolution = 224;
  cfg.skeleton.stem_out_c = 32;
  cfg.skeleton.stem_activation = ActivationKind::relu;
  cfg.skeleton.head_out_c = 1280;
  const long long out_c[] = {64, 24, 40, 80, 112, 192, 320};
  const int strides[] = {1, 2, 2, 2, 1, 2, 1};
  const int repeats[] = {1, 2, 2, 3, 3, 4, 1};
  for (int i = 0; i < 7; ++i)
    cfg.skeleton.stages.push_back({out_c[i], strides[i], repeats[i], {}});
  cfg.choices.conv_types = {ConvType::mbconv, ConvType::fused_mbconv};
  cfg.choices.kernels = {3, 5};
  cfg.choices.expansions = {1, 6};
  cfg.choices.se_ratios = {0.25, 0.5};
  cfg.choices.activations = {ActivationKind::relu, ActivationKind::swish};
  cfg.choices.s2d_positions = {std::nullopt, 0, 1, 2};
  return cfg;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!j.is_object())
    raise(ErrorCode::ParseError, where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key))
      raise(ErrorCode::ParseError, where + " has unknown key '" + key + "'");
  }
}

json choice_to_json(const StageChoice& c) {
  return json{{"conv_type", conv_type_name(c.conv_type)},
              {"kernel", c.kernel},
              {"expansion", c.expansion},
              {"se_ratio", c.se_ratio},
              {"activation", arch::activation_name(c.activation)}};
}

StageChoice choice_from_json(const json& j, const std::string& where) {
  check_keys(j, {"conv_type", "kernel", "expansion", "se_ratio", "activation"},
             where);
  for (const char* key :
       {"conv_type", "kernel", "expansion", "se_ratio", "activation"})
    if (!j.contains(key))
      raise(ErrorCode::ParseError,
            where + " is missing key '" + std::string(key) + "'");
  StageChoice c;
  c.conv_type = conv_type_from_name(j["conv_type"].get<std::string>());
  c.kernel = j["kernel"].get<int>();
  c.expansion = j["expansion"].get<int>();
  c.se_ratio = j["se_ratio"].get<double>();
  c.activation = arch::activation_from_name(j["activation"].get<std::string>());
  return c;
}

}  // namespace

json config_to_json(const SearchSpaceConfig& cfg) {
  check_config(cfg);
  json stages = json::array();
  for (const SkeletonStage& st : cfg.skeleton.stages) {
    json s{{"out_c", st.out_c}, {"stride", st.stride}, {"repeats", st.repeats}};
    if (st.fixed_choice) s["fixed_choice"] = choice_to_json(*st.fixed_choice);
    stages.push_back(s);
  }
  json skeleton{
      {"input_resolution", cfg.skeleton.input_resolution},
      {"stem_out_c", cfg.skeleton.stem_out_c},
      {"stem_activation", arch::activation_name(cfg.skeleton.stem_activation)},
      {"head_out_c", cfg.skeleton.head_out_c},
      {"stages", stages}};
  json conv_types = json::array();
  for (ConvType t : cfg.choices.conv_types)
    conv_types.push_back(conv_type_name(t));
  json activations = json::array();
  for (ActivationKind a : cfg.choices.activations)
    activations.push_back(arch::activation_name(a));
  json positions = json::array();
  for (const std::optional<int>& p : cfg.choices.s2d_positions) {
    if (p)
      positions.push_back(*p);
    else
      positions.push_back(nullptr);
  }
  json choices{{"conv_types", conv_types},
               {"kernels", cfg.choices.kernels},
               {"expansions", cfg.choices.expansions},
               {"se_ratios", cfg.choices.se_ratios},
               {"activations", activations},
               {"s2d_positions", positions}};
  return json{{"skeleton", skeleton}, {"choices", choices},
              {"population", cfg.population}, {"samples", cfg.samples},
              {"budget", cfg.budget}, {"seed", cfg.seed}};
}

SearchSpaceConfig config_from_json(const json& j) {
  check_keys(j, {"skeleton", "choices", "population", "samples", "budget",
                 "seed"},
             "search config");
  for (const char* key : {"skeleton", "choices"})
    if (!j.contains(key))
      raise(ErrorCode::ParseError,
            "search config is missing key '" + std::string(key) + "'");
  SearchSpaceConfig cfg;

  const json& sk = j["skeleton"];
  check_keys(sk,
             {"input_resolution", "stem_out_c", "stem_activation", "head_out_c",
              "stages"},
             "skeleton");
  for (const char* key : {"input_resolution", "stem_out_c", "stem_activation",
                          "head_out_c", "stages"})
    if (!sk.contains(key))
      raise(ErrorCode::ParseError,
            "skeleton is missing key '" + std::string(key) + "'");
  cfg.skeleton.input_resolution = sk["input_resolution"].get<int>();
  cfg.skeleton.stem_out_c = sk["stem_out_c"].get<long long>();
  cfg.skeleton.stem_activation =
      arch::activation_from_name(sk["stem_activation"].get<std::string>());
  cfg.skeleton.head_out_c = sk["head_out_c"].get<long long>();
  if (!sk["stages"].is_array())
    raise(ErrorCode::ParseError, "skeleton stages must be an array");
  cfg.skeleton.stages.clear();
  for (const json& s : sk["stages"]) {
    check_keys(s, {"out_c", "stride", "repeats", "fixed_choice"},
               "skeleton stage");
    for (const char* key : {"out_c", "stride", "repeats"})
      if (!s.contains(key))
        raise(ErrorCode::ParseError,
              "skeleton stage is missing key '" + std::string(key) + "'");
    SkeletonStage st;
    st.out_c = s["out_c"].get<long long>();
    st.stride = s["stride"].get<int>();
    st.repeats = s["repeats"].get<int>();
    if (s.contains("fixed_choice"))
      st.fixed_choice = choice_from_json(s["fixed_choice"], "fixed_choice");
    cfg.skeleton.stages.push_back(st);
  }

  const json& ch = j["choices"];
  check_keys(ch,
             {"conv_types", "kernels", "expansions", "se_ratios", "activations",
              "s2d_positions"},
             "choices");
  for (const char* key : {"conv_types", "kernels", "expansions", "se_ratios",
                          "activations", "s2d_positions"})
    if (!ch.contains(key) || !ch[key].is_array())
      raise(ErrorCode::ParseError,
            "choices needs an array '" + std::string(key) + "'");
  cfg.choices = Choices{};
  for (const json& t : ch["conv_types"])
    cfg.choices.conv_types.push_back(conv_type_from_name(t.get<std::string>()));
  for (const json& k : ch["kernels"])
    cfg.choices.kernels.push_back(k.get<int>());
  for (const json& e : ch["expansions"])
    cfg.choices.expansions.push_back(e.get<int>());
  for (const json& se : ch["se_ratios"])
    cfg.choices.se_ratios.push_back(se.get<double>());
  for (const json& a : ch["activations"])
    cfg.choices.activations.push_back(
        arch::activation_from_name(a.get<std::string>()));
  for (const json& p : ch["s2d_positions"]) {
    if (p.is_null())
      cfg.choices.s2d_positions.push_back(std::nullopt);
    else
      cfg.choices.s2d_positions.push_back(p.get<int>());
  }

  if (j.contains("population")) cfg.population = j["population"].get<int>();
  if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
  if (j.contains("budget")) cfg.budget = j["budget"].get<long long>();
  if (j.contains("seed"))
    cfg.seed = j["seed"].get<unsigned long long>();
  check_config(cfg);
  return cfg;
}

SearchSpaceConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    raise(ErrorCode::ParseError, "cannot open search config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError,
          "invalid JSON in search config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

void save_config_file(const SearchSpaceConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    raise(ErrorCode::ParseError, "cannot write search config file: " + path);
  out << config_to_json(cfg).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Space enumeration
// ---------------------------------------------------------------------------

unsigned long long space_size(const SearchSpaceConfig& cfg) {
  check_config(cfg);
  const unsigned long long per_stage =
      static_cast<unsigned long long>(cfg.choices.conv_types.size()) *
      cfg.choices.kernels.size() * cfg.choices.expansions.size() *
      cfg.choices.se_ratios.size() * cfg.choices.activations.size();
  unsigned long long total = cfg.choices.s2d_positions.size();
  for (const SkeletonStage& st : cfg.skeleton.stages) {
    if (st.fixed_choice) continue;
    if (total > (1ull << 62) / per_stage)
      raise(ErrorCode::BadRange, "search space size overflows");
    total *= per_stage;
  }
  return total;
}

ModelSpec realize(const SearchSpaceConfig& cfg, const Candidate& cand) {
  check_config(cfg);
  if (cand.stages.size() != cfg.skeleton.stages.size())
    raise(ErrorCode::BadRange,
          "candidate stage count does not match the skeleton");
  ModelSpec m;
  m.name = "nas_candidate";
  m.input_resolution = cfg.skeleton.input_resolution;
  m.stages.push_back(Stage{Op::stem(3, cfg.skeleton.stem_out_c), 1,
                           cfg.skeleton.stem_activation, false});
  int drop_stride_at = -1;
  if (cand.s2d_position) {
    const int p = *cand.s2d_position;
    if (p < 0 || p >= static_cast<int>(cfg.skeleton.stages.size()))
      raise(ErrorCode::BadRange, "candidate s2d position is out of range");
    for (std::size_t i = static_cast<std::size_t>(p);
         i < cfg.skeleton.stages.size(); ++i) {
      if (cfg.skeleton.stages[i].stride == 2) {
        drop_stride_at = static_cast<int>(i);
        break;
      }
    }
  }
  for (std::size_t i = 0; i < cfg.skeleton.stages.size(); ++i) {
    if (cand.s2d_position && static_cast<int>(i) == *cand.s2d_position)
      m.stages.push_back(
          Stage{Op::space_to_depth(2), 1, ActivationKind::relu, false});
    const SkeletonStage& st = cfg.skeleton.stages[i];
    const StageChoice& c = cand.stages[i];
    const int stride =
        (static_cast<int>(i) == drop_stride_at) ? 1 : st.stride;
    Op op = (c.conv_type == ConvType::mbconv)
                ? Op::mbconv(c.kernel, c.expansion, c.se_ratio, stride,
                             st.out_c)
                : Op::fused_mbconv(c.kernel, c.expansion, c.se_ratio, stride,
                                   st.out_c);
    m.stages.push_back(Stage{op, st.repeats, c.activation, st.repeats > 1});
  }
  m.stages.push_back(Stage{Op::conv(1, 1, cfg.skeleton.head_out_c), 1,
                           ActivationKind::relu, false});
  return m;
}

namespace {

StageChoice decode_stage(const SearchSpaceConfig& cfg,
                         unsigned long long& index) {
  const Choices& ch = cfg.choices;
  StageChoice c;
  // Least-significant digit order: activation, se, expansion, kernel, type.
  c.activation = ch.activations[index % ch.activations.size()];
  index /= ch.activations.size();
  c.se_ratio = ch.se_ratios[index % ch.se_ratios.size()];
  index /= ch.se_ratios.size();
  c.expansion = ch.expansions[index % ch.expansions.size()];
  index /= ch.expansions.size();
  c.kernel = ch.kernels[index % ch.kernels.size()];
  index /= ch.kernels.size();
  c.conv_type = ch.conv_types[index % ch.conv_types.size()];
  index /= ch.conv_types.size();
  return c;
}

Candidate decode(const SearchSpaceConfig& cfg, unsigned long long index) {
  Candidate cand;
  cand.stages.resize(cfg.skeleton.stages.size());
  // Stages consume digits from the last stage backwards so that increasing
  // the index walks the last free stage fastest.
  for (std::size_t r = cfg.skeleton.stages.size(); r-- > 0;) {
    if (cfg.skeleton.stages[r].fixed_choice) {
      cand.stages[r] = *cfg.skeleton.stages[r].fixed_choice;
      continue;
    }
    cand.stages[r] = decode_stage(cfg, index);
  }
  cand.s2d_position =
      cfg.choices.s2d_positions[index % cfg.choices.s2d_positions.size()];
  return cand;
}

}  // namespace

Candidate sample(const SearchSpaceConfig& cfg, unsigned long long seed) {
  check_config(cfg);
  std::mt19937_64 rng(seed);
  Candidate cand;
  cand.stages.reserve(cfg.skeleton.stages.size());
  for (const SkeletonStage& st : cfg.skeleton.stages) {
    if (st.fixed_choice) {
      cand.stages.push_back(*st.fixed_choice);
      continue;
    }
    StageChoice c;
    c.conv_type = cfg.choices.conv_types[draw(rng, cfg.choices.conv_types.size())];
    c.kernel = cfg.choices.kernels[draw(rng, cfg.choices.kernels.size())];
    c.expansion = cfg.choices.expansions[draw(rng, cfg.choices.expansions.size())];
    c.se_ratio = cfg.choices.se_ratios[draw(rng, cfg.choices.se_ratios.size())];
    c.activation =
        cfg.choices.activations[draw(rng, cfg.choices.activations.size())];
    cand.stages.push_back(c);
  }
  cand.s2d_position =
      cfg.choices.s2d_positions[draw(rng, cfg.choices.s2d_positions.size())];
  return cand;
}

namespace {

enum class Field { conv_type, kernel, expansion, se_ratio, activation, s2d };

struct Slot {
  Field field;
  int stage = -1;  // -1 for the reshape-position slot
};

template <typename T>
T pick_different(std::mt19937_64& rng, const std::vector<T>& values,
                 const T& current) {
  std::vector<T> alts;
  for (const T& v : values)
    if (!(v == current)) alts.push_back(v);
  return alts[draw(rng, alts.size())];
}

template <typename T>
bool has_alternative(const std::vector<T>& values, const T& current) {
  for (const T& v : values)
    if (!(v == current)) return true;
  return false;
}

}  // namespace

Candidate mutate(const SearchSpaceConfig& cfg, const Candidate& cand,
                 unsigned long long seed) {
  check_config(cfg);
  if (cand.stages.size() != cfg.skeleton.stages.size())
    raise(ErrorCode::BadRange,
          "candidate stage count does not match the skeleton");
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < cfg.skeleton.stages.size(); ++i) {
    if (cfg.skeleton.stages[i].fixed_choice) continue;
    const StageChoice& c = cand.stages[i];
    const int stage = static_cast<int>(i);
    if (has_alternative(cfg.choices.conv_types, c.conv_type))
      slots.push_back({Field::conv_type, stage});
    if (has_alternative(cfg.choices.kernels, c.kernel))
      slots.push_back({Field::kernel, stage});
    if (has_alternative(cfg.choices.expansions, c.expansion))
      slots.push_back({Field::expansion, stage});
    if (has_alternative(cfg.choices.se_ratios, c.se_ratio))
      slots.push_back({Field::se_ratio, stage});
    if (has_alternative(cfg.choices.activations, c.activation))
      slots.push_back({Field::activation, stage});
  }
  if (has_alternative(cfg.choices.s2d_positions, cand.s2d_position))
    slots.push_back({Field::s2d, -1});
  if (slots.empty())
    raise(ErrorCode::NoMutationPossible,
          "every searchable field has a single option");

  std::mt19937_64 rng(seed);
  const Slot slot = slots[draw(rng, slots.size())];
  Candidate out = cand;
  switch (slot.field) {
    case Field::conv_type:
      out.stages[slot.stage].conv_type = pick_different(
          rng, cfg.choices.conv_types, cand.stages[slot.stage].conv_type);
      break;
    case Field::kernel:
      out.stages[slot.stage].kernel = pick_different(
          rng, cfg.choices.kernels, cand.stages[slot.stage].kernel);
      break;
    case Field::expansion:
      out.stages[slot.stage].expansion = pick_different(
          rng, cfg.choices.expansions, cand.stages[slot.stage].expansion);
      break;
    case Field::se_ratio:
      out.stages[slot.stage].se_ratio = pick_different(
          rng, cfg.choices.se_ratios, cand.stages[slot.stage].se_ratio);
      break;
    case Field::activation:
      out.stages[slot.stage].activation = pick_different(
          rng, cfg.choices.activations, cand.stages[slot.stage].activation);
      break;
    case Field::s2d:
      out.s2d_position =
          pick_different(rng, cfg.choices.s2d_positions, cand.s2d_position);
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pareto archive
// ---------------------------------------------------------------------------

bool ParetoArchive::insert(const EvalRecord& rec) {
  for (const EvalRecord& e : entries_) {
    const bool no_worse =
        e.accuracy >= rec.accuracy && e.latency <= rec.latency;
    const bool strictly_better =
        e.accuracy > rec.accuracy || e.latency < rec.latency;
    if (no_worse && strictly_better) return false;
    if (e.accuracy == rec.accuracy && e.latency == rec.latency) return false;
  }
  entries_.erase(
      std::remove_if(entries_.begin(), entries_.end(),
                     [&](const EvalRecord& e) {
                       const bool no_worse = rec.accuracy >= e.accuracy &&
                                             rec.latency <= e.latency;
                       const bool strictly_better = rec.accuracy > e.accuracy ||
                                                    rec.latency < e.latency;
                       return no_worse && strictly_better;
                     }),
      entries_.end());
  entries_.push_back(rec);
  return true;
}

// ---------------------------------------------------------------------------
// Search drivers
// ---------------------------------------------------------------------------

namespace {

// Strictly better under the shared tie-break chain (reward, accuracy,
// latency); equal records keep the earlier one.
bool better_record(const EvalRecord& x, const EvalRecord& y) {
  if (x.reward != y.reward) return x.reward > y.reward;
  if (x.accuracy != y.accuracy) return x.accuracy > y.accuracy;
  return x.latency < y.latency;
}

struct Evaluator {
  const SearchSpaceConfig& cfg;
  const cost::HardwareProfile& profile;
  const lacs::AccuracySurrogate& surrogate;
  const lacs::RewardConfig& reward_cfg;

  EvalRecord operator()(long long index, const Candidate& cand) const {
    const ModelSpec m = realize(cfg, cand);
    const cost::ModelCost mc =
        cost::model_cost(arch::validate_model(m, reward_cfg.batch), profile);
    EvalRecord rec;
    rec.index = index;
    rec.candidate = cand;
    rec.accuracy = surrogate(m);
    rec.latency = mc.total_latency;
    rec.flops = static_cast<double>(mc.total_flops) /
                static_cast<double>(reward_cfg.batch);
    rec.reward = lacs::reward(rec.accuracy, rec.latency, reward_cfg);
    return rec;
  }
};

}  // namespace

SearchResult evolutionary_search(const SearchSpaceConfig& cfg,
                                 const cost::HardwareProfile& profile,
                                 const lacs::AccuracySurrogate& surrogate,
                                 const lacs::RewardConfig& reward_cfg) {
  check_config(cfg);
  const Evaluator eval{cfg, profile, surrogate, reward_cfg};
  std::mt19937_64 master(cfg.seed);

  SearchResult result;
  ParetoArchive archive;
  std::deque<EvalRecord> population;
  bool have_best = false;

  const auto record = [&](const EvalRecord& rec) {
    if (result.log.size() < kLogCap) result.log.push_back(rec);
    archive.insert(rec);
    if (!have_best || better_record(rec, result.best)) {
      result.best = rec;
      have_best = true;
    }
    ++result.evaluations;
  };

  for (int i = 0; i < cfg.population; ++i) {
    const Candidate cand = sample(cfg, master());
    const EvalRecord rec = eval(result.evaluations, cand);
    record(rec);
    population.push_back(rec);
  }
  while (result.evaluations < cfg.budget) {
    // Tournament: sample cfg.samples members (with replacement) and mutate
    // the highest-reward one.
    std::size_t parent_idx = draw(master, population.size());
    for (int s = 1; s < cfg.samples; ++s) {
      const std::size_t idx = draw(master, population.size());
      if (better_record(population[idx], population[parent_idx]))
        parent_idx = idx;
    }
    const Candidate child =
        mutate(cfg, population[parent_idx].candidate, master());
    const EvalRecord rec = eval(result.evaluations, child);
    record(rec);
    population.push_back(rec);
    population.pop_front();
  }
  result.pareto = archive.entries();
  return result;
}

SearchResult exhaustive_search(const SearchSpaceConfig& cfg,
                               const cost::HardwareProfile& profile,
                               const lacs::AccuracySurrogate& surrogate,
                               const lacs::RewardConfig& reward_cfg) {
  const unsigned long long space = space_size(cfg);
  if (space > static_cast<unsigned long long>(kExhaustiveCap))
    raise(ErrorCode::SpaceTooLarge,
          "exhaustive search over " + std::to_string(space) +
              " candidates exceeds the cap of " +
              std::to_string(kExhaustiveCap));
  const Evaluator eval{cfg, profile, surrogate, reward_cfg};

  SearchResult result;
  ParetoArchive archive;
  bool have_best = false;
  for (unsigned long long index = 0; index < space; ++index) {
    const Candidate cand = decode(cfg, index);
    const EvalRecord rec = eval(static_cast<long long>(index), cand);
    if (result.log.size() < kLogCap) result.log.push_back(rec);
    archive.insert(rec);
    if (!have_best || better_record(rec, result.best)) {
      result.best = rec;
      have_best = true;
    }
    ++result.evaluations;
  }
  result.pareto = archive.entries();
  return result;
}

}  // namespace accelscale::nas
