// Command-line front end: model cost tables, compound-scaling families,
// block search, family comparison, and roofline charts.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "accelscale/arch.hpp"
#include "accelscale/cost.hpp"
#include "accelscale/errors.hpp"
#include "accelscale/lacs.hpp"
#include "accelscale/nas.hpp"
#include "accelscale/report.hpp"

namespace {

using namespace accelscale;

// Usage errors and malformed/unresolvable inputs exit 2; domain failures
// (unreachable targets, oversized spaces, ...) exit 3.
int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::EmptyModel:
    case ErrorCode::NonDivisibleStride:
    case ErrorCode::UnsupportedOp:
    case ErrorCode::LevelMismatch:
      return 2;
    default:
      return 3;
  }
}

bool file_exists(const std::string& path) {
  std::error_code ec;
  return std::filesystem::exists(path, ec) && !ec;
}

arch::ModelSpec resolve_model(const std::string& name) {
  if (file_exists(name)) return arch::load_model_file(name);
  if (name == "efficientnet_b0") return arch::build_efficientnet_b0();
  if (name == "efficientnet_x_b0" || name == "efficientnet_x_b0_tpu")
    return arch::build_efficientnet_x_b0(arch::Target::tpu);
  if (name == "efficientnet_x_b0_gpu")
    return arch::build_efficientnet_x_b0(arch::Target::gpu);
  for (const arch::ModelSpec& m : arch::build_breakdown_variants())
    if (m.name == name) return m;
  raise(ErrorCode::ParseError,
        "unknown model '" + name + "': not a file or builtin name");
}

cost::HardwareProfile resolve_profile(const std::string& name) {
  if (file_exists(name)) return cost::load_profile_file(name);
  if (const char* dir = std::getenv("ACCELSCALE_PROFILE_DIR")) {
    const std::string candidate =
        (std::filesystem::path(dir) / (name + ".json")).string();
    if (file_exists(candidate)) return cost::load_profile_file(candidate);
  }
  for (const std::string& builtin : cost::builtin_profile_names())
    if (builtin == name) return cost::builtin_profile(name);
  raise(ErrorCode::ParseError,
        "unknown profile '" + name +
            "': not a file, profile-dir entry, or builtin name");
}

lacs::PhiSchedule resolve_schedule(const std::string& name) {
  if (file_exists(name)) return lacs::load_schedule_file(name);
  for (const std::string& builtin : lacs::builtin_schedule_names())
    if (builtin == name) return lacs::builtin_schedule(name);
  raise(ErrorCode::ParseError,
        "unknown schedule '" + name + "': not a file or builtin name");
}

arch::ScalingCoeffs parse_coeffs(const std::string& text) {
  double a = 0, b = 0, g = 0;
  char sep1 = 0, sep2 = 0;
  std::istringstream in(text);
  if (!(in >> a >> sep1 >> b >> sep2 >> g) || sep1 != ',' || sep2 != ',' ||
      !(in >> std::ws).eof())
    raise(ErrorCode::ParseError,
          "coefficients must be 'alpha,beta,gamma', got '" + text + "'");
  return {a, b, g};
}

lacs::GridAxis parse_axis(const std::string& text) {
  double lo = 0, hi = 0, step = 0;
  char sep1 = 0, sep2 = 0;
  std::istringstream in(text);
  if (!(in >> lo >> sep1 >> hi >> sep2 >> step) || sep1 != ':' ||
      sep2 != ':' || !(in >> std::ws).eof())
    raise(ErrorCode::ParseError,
          "grid axis must be 'min:max:step', got '" + text + "'");
  return {lo, hi, step};
}

void emit(const report::ReportBundle& bundle, const std::string& out_dir,
          const std::string& stdout_file) {
  if (!out_dir.empty()) {
    bundle.write_to(out_dir);
    return;
  }
  for (const report::ReportFile& f : bundle.files)
    if (f.name == stdout_file) {
      std::cout << f.content;
      return;
    }
  raise(ErrorCode::ParseError, "no report named " + stdout_file);
}

struct CommonArgs {
  std::string model = "efficientnet_x_b0";
  std::string profile = "tpu_v3_like";
  std::string format = "csv";
  std::string out;
  long long batch = 1;
};

int cmd_analyze(const CommonArgs& args) {
  const arch::ModelSpec spec = resolve_model(args.model);
  const cost::HardwareProfile profile = resolve_profile(args.profile);
  const cost::ModelCost mc =
      cost::model_cost(arch::validate_model(spec, args.batch), profile);
  report::ReportBundle bundle;
  bundle.add("cost_table.csv", report::cost_table_csv(mc));
  bundle.add("cost_table.json",
             report::cost_table_json(spec.name, profile.name, mc).dump(2) +
                 "\n");
  emit(bundle, args.out, "cost_table." + args.format);
  return 0;
}

int cmd_scale(const CommonArgs& args, const std::string& coeffs_text,
              const std::vector<std::string>& grid_specs,
              const std::string& schedule_name, double target_mult) {
  const arch::ModelSpec spec = resolve_model(args.model);
  const cost::HardwareProfile profile = resolve_profile(args.profile);
  const lacs::PhiSchedule schedule = resolve_schedule(schedule_name);

  arch::ScalingCoeffs coeffs;
  report::ReportBundle bundle;
  if (!coeffs_text.empty()) {
    coeffs = parse_coeffs(coeffs_text);
  } else {
    // No explicit triplet: run the latency-aware grid search first.
    lacs::GridSpec grid;
    if (!grid_specs.empty()) {
      if (grid_specs.size() != 3)
        raise(ErrorCode::ParseError,
              "--grid must be given three times (alpha, beta, gamma axes)");
      grid.alpha = parse_axis(grid_specs[0]);
      grid.beta = parse_axis(grid_specs[1]);
      grid.gamma = parse_axis(grid_specs[2]);
    }
    const lacs::RewardConfig reward_cfg =
        lacs::default_reward_for(spec, profile, target_mult, args.batch);
    const lacs::CoeffSearchResult found = lacs::grid_search_coeffs(
        spec, profile, lacs::default_surrogate_for(spec), reward_cfg, grid);
    coeffs = found.best;
    bundle.add("coeff_search.json",
               nlohmann::json{
                   {"alpha", report::round6(coeffs.alpha)},
                   {"beta", report::round6(coeffs.beta)},
                   {"gamma", report::round6(coeffs.gamma)},
                   {"reward", report::round6(found.best_reward)},
                   {"evaluated", static_cast<long long>(found.evaluated.size())},
                   {"skipped", static_cast<long long>(found.skipped.size())}}
                   .dump(2) +
                   "\n");
  }

  const std::vector<lacs::FamilyLevel> family =
      lacs::scale_family(spec, coeffs, schedule, profile, args.batch);
  bundle.add("family.csv", report::family_csv(family, args.batch));
  bundle.add("family.json",
             report::family_json(spec.name, profile.name, coeffs, family,
                                 args.batch)
                     .dump(2) +
                 "\n");
  emit(bundle, args.out, "family." + args.format);
  return 0;
}

int cmd_search(const CommonArgs& args, const std::string& space_path,
               long long budget, unsigned long long seed, int population,
               int samples, double target_mult) {
  const cost::HardwareProfile profile = resolve_profile(args.profile);
  nas::SearchSpaceConfig cfg = space_path.empty()
                                   ? nas::default_space()
                                   : nas::load_config_file(space_path);
  if (budget > 0) cfg.budget = budget;
  if (population > 0) cfg.population = population;
  if (samples > 0) cfg.samples = samples;
  cfg.seed = seed;
  nas::check_config(cfg);

  // Reward target and surrogate anchor come from the all-first-choices
  // reference candidate, so runs are reproducible from the config alone.
  nas::Candidate reference;
  for (const nas::SkeletonStage& st : cfg.skeleton.stages) {
    nas::StageChoice c;
    if (st.fixed_choice) {
      c = *st.fixed_choice;
    } else {
      c.conv_type = cfg.choices.conv_types.front();
      c.kernel = cfg.choices.kernels.front();
      c.expansion = cfg.choices.expansions.front();
      c.se_ratio = cfg.choices.se_ratios.front();
      c.activation = cfg.choices.activations.front();
    }
    reference.stages.push_back(c);
  }
  reference.s2d_position = cfg.choices.s2d_positions.front();
  const arch::ModelSpec reference_model = nas::realize(cfg, reference);
  lacs::RewardConfig reward_cfg = lacs::default_reward_for(
      reference_model, profile, target_mult, args.batch);
  const lacs::AccuracySurrogate surrogate =
      lacs::default_surrogate_for(reference_model);

  const nas::SearchResult result =
      nas::evolutionary_search(cfg, profile, surrogate, reward_cfg);
  report::ReportBundle bundle;
  bundle.add("search_log.jsonl", report::search_log_jsonl(result.log));
  bundle.add("pareto.csv", report::pareto_csv(result.pareto));
  bundle.add("best.json", report::search_result_json(result).dump(2) + "\n");
  emit(bundle, args.out, "best.json");
  return 0;
}

int cmd_compare(const std::string& family_a, const std::string& family_b,
                const std::string& format, const std::string& out) {
  const report::FamilySummaryFile a = report::load_family_summary(family_a);
  const report::FamilySummaryFile b = report::load_family_summary(family_b);
  const lacs::ComparisonReport cmp = report::compare_from_summaries(a, b);
  report::ReportBundle bundle;
  bundle.add("compare.csv", report::compare_csv(cmp));
  bundle.add("compare.json", report::compare_json(cmp).dump(2) + "\n");
  emit(bundle, out, "compare." + format);
  return 0;
}

int cmd_roofline(const std::vector<std::string>& profile_names,
                 const std::vector<std::string>& model_names, long long batch,
                 const std::string& out) {
  std::vector<cost::HardwareProfile> profiles;
  if (profile_names.empty())
    for (const std::string& name : cost::builtin_profile_names())
      profiles.push_back(cost::builtin_profile(name));
  else
    for (const std::string& name : profile_names)
      profiles.push_back(resolve_profile(name));

  std::vector<report::RooflineModelPoint> points;
  for (const std::string& name : model_names) {
    const arch::ModelSpec spec = resolve_model(name);
    for (const cost::HardwareProfile& profile : profiles) {
      const cost::ModelCost mc =
          cost::model_cost(arch::validate_model(spec, batch), profile);
      points.push_back({spec.name + "@" + profile.name,
                        mc.aggregate_intensity,
                        mc.total_flops / mc.total_latency});
    }
  }
  report::ReportBundle bundle;
  bundle.add("roofline.svg", report::roofline_svg(profiles, points));
  emit(bundle, out, "roofline.svg");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "accelscale: roofline latency modeling and latency-aware compound "
      "scaling for CNN accelerators"};
  app.require_subcommand(1);

  CommonArgs analyze_args;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Per-stage roofline cost table for one model");
  analyze->add_option("--model", analyze_args.model,
                      "Model name or JSON file");
  analyze->add_option("--profile", analyze_args.profile,
                      "Hardware profile name or JSON file");
  analyze->add_option("--batch", analyze_args.batch, "Batch size")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--format", analyze_args.format, "Stdout format")
      ->check(CLI::IsMember({"csv", "json"}));
  analyze->add_option("--out", analyze_args.out,
                      "Output directory (writes all formats + manifest)");

  CommonArgs scale_args;
  scale_args.batch = 128;
  std::string scale_coeffs;
  std::vector<std::string> scale_grid;
  std::string scale_schedule = "lacs_gpu";
  double scale_target_mult = 2.0;
  CLI::App* scale = app.add_subcommand(
      "scale", "Build a scaled model family (optionally searching "
               "coefficients first)");
  scale->add_option("--model", scale_args.model, "Base model name or file");
  scale->add_option("--profile", scale_args.profile,
                    "Hardware profile name or JSON file");
  scale->add_option("--coeffs", scale_coeffs,
                    "alpha,beta,gamma (skips the coefficient search)");
  scale->add_option("--grid", scale_grid,
                    "Axis as min:max:step; give three times for alpha, beta, "
                    "gamma")
      ->expected(0, 3);
  scale->add_option("--schedule", scale_schedule,
                    "Phi schedule name or JSON file");
  scale->add_option("--target-mult", scale_target_mult,
                    "Latency target as a multiple of the base model's");
  scale->add_option("--batch", scale_args.batch, "Batch size")
      ->check(CLI::PositiveNumber);
  scale->add_option("--format", scale_args.format, "Stdout format")
      ->check(CLI::IsMember({"csv", "json"}));
  scale->add_option("--out", scale_args.out, "Output directory");

  CommonArgs search_args;
  search_args.batch = 128;
  std::string search_space;
  long long search_budget = 0;
  unsigned long long search_seed = 1;
  int search_population = 0;
  int search_samples = 0;
  double search_target_mult = 2.0;
  CLI::App* search = app.add_subcommand(
      "search", "Evolutionary block search over a stage-choice space");
  search->add_option("--space", search_space,
                     "Search-space config JSON (default: builtin space)");
  search->add_option("--profile", search_args.profile,
                     "Hardware profile name or JSON file");
  search->add_option("--budget", search_budget, "Total evaluations");
  search->add_option("--seed", search_seed, "Random seed");
  search->add_option("--population", search_population, "Population size");
  search->add_option("--samples", search_samples, "Tournament sample size");
  search->add_option("--target-mult", search_target_mult,
                     "Latency target as a multiple of the reference "
                     "candidate's");
  search->add_option("--batch", search_args.batch, "Batch size")
      ->check(CLI::PositiveNumber);
  search->add_option("--out", search_args.out, "Output directory");

  std::string compare_family_a, compare_family_b, compare_format = "csv",
                                                  compare_out;
  CLI::App* compare = app.add_subcommand(
      "compare", "Per-level latency comparison of two family.json files");
  compare->add_option("--family-a", compare_family_a, "First family.json")
      ->required();
  compare->add_option("--family-b", compare_family_b, "Second family.json")
      ->required();
  compare->add_option("--format", compare_format, "Stdout format")
      ->check(CLI::IsMember({"csv", "json"}));
  compare->add_option("--out", compare_out, "Output directory");

  std::vector<std::string> roofline_profiles, roofline_models;
  long long roofline_batch = 1;
  std::string roofline_out;
  CLI::App* roofline = app.add_subcommand(
      "roofline", "SVG roofline chart for profiles and optional models");
  roofline->add_option("--profile", roofline_profiles,
                       "Profile name or file (repeatable; default: all "
                       "builtins)");
  roofline->add_option("--model", roofline_models,
                       "Model name or file (repeatable)");
  roofline->add_option("--batch", roofline_batch, "Batch size")
      ->check(CLI::PositiveNumber);
  roofline->add_option("--out", roofline_out, "Output directory");

  try {
    app.parse(argc, argv);
    if (analyze->parsed()) return cmd_analyze(analyze_args);
    if (scale->parsed())
      return cmd_scale(scale_args, scale_coeffs, scale_grid, scale_schedule,
                       scale_target_mult);
    if (search->parsed())
      return cmd_search(search_args, search_space, search_budget, search_seed,
                        search_population, search_samples, search_target_mult);
    if (compare->parsed())
      return cmd_compare(compare_family_a, compare_family_b, compare_format,
                         compare_out);
    if (roofline->parsed())
      return cmd_roofline(roofline_profiles, roofline_models, roofline_batch,
                          roofline_out);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const accelscale::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
