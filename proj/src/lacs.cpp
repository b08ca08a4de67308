#include "accelscale/lacs.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <future>
#include <set>
#include <thread>
#include <tuple>
#include <utility>

namespace accelscale::lacs {

using arch::ModelSpec;
using arch::RoundingPolicy;
using arch::ScalingCoeffs;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Reward
// ---------------------------------------------------------------------------

double reward(double accuracy, double latency, const RewardConfig& cfg) {
  if (!(cfg.w < 0.0))
    raise(ErrorCode::BadRange, "reward exponent w must be negative");
  if (!(cfg.target_latency > 0.0))
    raise(ErrorCode::BadRange, "reward target latency must be positive");
  if (!(accuracy > 0.0) || !(latency > 0.0))
    raise(ErrorCode::BadRange, "reward needs positive accuracy and latency");
  return accuracy * std::pow(latency / cfg.target_latency, cfg.w);
}

// ---------------------------------------------------------------------------
// Accuracy surrogate
// ---------------------------------------------------------------------------

namespace {

double clamp_accuracy(double a) {
  return std::min(0.9999, std::max(1e-3, a));
}

}  // namespace

AccuracySurrogate AccuracySurrogate::synthetic_flops(double base_flops,
                                                     double base_accuracy,
                                                     double kappa) {
  if (!(base_flops > 0.0))
    raise(ErrorCode::BadRange, "surrogate base FLOPs must be positive");
  if (!(base_accuracy > 0.0) || !(base_accuracy < 1.0))
    raise(ErrorCode::BadRange, "surrogate base accuracy must be in (0, 1)");
  if (!(kappa > 0.0))
    raise(ErrorCode::BadRange, "surrogate kappa must be positive");
  AccuracySurrogate s;
  s.kind = Kind::synthetic;
  s.fn = [base_flops, base_accuracy, kappa](const ModelSpec& m) {
    const double f = static_cast<double>(cost::model_flops(m, 1));
    const double ratio = f / base_flops;
    return clamp_accuracy(1.0 - (1.0 - base_accuracy) * std::pow(ratio, -kappa));
  };
  return s;
}

AccuracySurrogate AccuracySurrogate::table(
    std::vector<std::pair<double, double>> flops_accuracy) {
  if (flops_accuracy.empty())
    raise(ErrorCode::BadRange, "surrogate table needs at least one point");
  std::sort(flops_accuracy.begin(), flops_accuracy.end());
  for (std::size_t i = 0; i < flops_accuracy.size(); ++i) {
    if (!(flops_accuracy[i].first > 0.0))
      raise(ErrorCode::BadRange, "surrogate table FLOPs must be positive");
    if (!(flops_accuracy[i].second > 0.0) || !(flops_accuracy[i].second < 1.0))
      raise(ErrorCode::BadRange, "surrogate table accuracy must be in (0, 1)");
    if (i > 0 && flops_accuracy[i].first == flops_accuracy[i - 1].first)
      raise(ErrorCode::BadRange, "surrogate table has duplicate FLOPs points");
  }
  AccuracySurrogate s;
  s.kind = Kind::table;
  s.fn = [pts = std::move(flops_accuracy)](const ModelSpec& m) {
    const double f = static_cast<double>(cost::model_flops(m, 1));
    if (f <= pts.front().first) return pts.front().second;
    if (f >= pts.back().first) return pts.back().second;
    const double lf = std::log(f);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (f <= pts[i].first) {
        const double l0 = std::log(pts[i - 1].first);
        const double l1 = std::log(pts[i].first);
        const double t = (lf - l0) / (l1 - l0);
        return clamp_accuracy(pts[i - 1].second +
                              t * (pts[i].second - pts[i - 1].second));
      }
    }
    return pts.back().second;  // unreachable
  };
  return s;
}

// ---------------------------------------------------------------------------
// Phi schedules
// ---------------------------------------------------------------------------

void check_schedule(const PhiSchedule& schedule) {
  if (schedule.levels.empty())
    raise(ErrorCode::InvalidPhi, "schedule has no levels");
  double prev_phi = -1.0;
  bool have_prev_phi = false;
  for (std::size_t i = 0; i < schedule.levels.size(); ++i) {
    const PhiLevel& lv = schedule.levels[i];
    if (lv.name.empty())
      raise(ErrorCode::ParseError,
            "schedule level " + std::to_string(i) + " has an empty name");
    const bool has_phi = lv.phi.has_value();
    const bool has_lat = lv.latency_target_s.has_value();
    if (has_phi == has_lat)
      raise(ErrorCode::ParseError,
            "schedule level '" + lv.name +
                "' must set exactly one of phi / latency_target_s");
    if (has_phi) {
      if (!(*lv.phi >= 0.0))
        raise(ErrorCode::InvalidPhi,
              "schedule level '" + lv.name + "' has negative phi");
      if (i == 0 && *lv.phi != 0.0)
        raise(ErrorCode::InvalidPhi,
              "first schedule level must have phi = 0, got " +
                  std::to_string(*lv.phi));
      if (have_prev_phi && !(*lv.phi > prev_phi))
        raise(ErrorCode::InvalidPhi,
              "schedule phi values must be strictly increasing at level '" +
                  lv.name + "'");
      prev_phi = *lv.phi;
      have_prev_phi = true;
    }
    if (has_lat && !(*lv.latency_target_s > 0.0))
      raise(ErrorCode::ParseError,
            "schedule level '" + lv.name + "' has non-positive latency target");
  }
}

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

PhiSchedule make_schedule(const std::vector<double>& phis) {
  PhiSchedule s;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    PhiLevel lv;
    lv.name = "B" + std::to_string(i);
    lv.phi = phis[i];
    s.levels.push_back(lv);
  }
  return s;
}

}  // namespace

json schedule_to_json(const PhiSchedule& schedule) {
  check_schedule(schedule);
  json levels = json::array();
  for (const PhiLevel& lv : schedule.levels) {
    json l;
    l["name"] = lv.name;
    if (lv.phi) l["phi"] = *lv.phi;
    if (lv.latency_target_s) l["latency_target_s"] = *lv.latency_target_s;
    levels.push_back(l);
  }
  return json{{"levels", levels}};
}

PhiSchedule schedule_from_json(const json& j) {
  check_keys(j, {"levels"}, "schedule");
  if (!j.contains("levels") || !j["levels"].is_array())
    raise(ErrorCode::ParseError, "schedule needs a 'levels' array");
  PhiSchedule s;
  for (const json& l : j["levels"]) {
    check_keys(l, {"name", "phi", "latency_target_s"}, "schedule level");
    PhiLevel lv;
    if (!l.contains("name") || !l["name"].is_string())
      raise(ErrorCode::ParseError, "schedule level needs a string 'name'");
    lv.name = l["name"].get<std::string>();
    if (l.contains("phi")) {
      if (!l["phi"].is_number())
        raise(ErrorCode::ParseError, "schedule phi must be a number");
      lv.phi = l["phi"].get<double>();
    }
    if (l.contains("latency_target_s")) {
      if (!l["latency_target_s"].is_number())
        raise(ErrorCode::ParseError, "schedule latency_target_s must be a number");
      lv.latency_target_s = l["latency_target_s"].get<double>();
    }
    s.levels.push_back(lv);
  }
  check_schedule(s);
  return s;
}

PhiSchedule load_schedule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::ParseError, "cannot open schedule file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError,
          "invalid JSON in schedule file " + path + ": " + e.what());
  }
  return schedule_from_json(j);
}

void save_schedule_file(const PhiSchedule& schedule, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::ParseError, "cannot write schedule file: " + path);
  out << schedule_to_json(schedule).dump(2) << "\n";
}

PhiSchedule lacs_gpu_schedule() {
  return make_schedule(
      {0.0, 0.4776, 0.7717, 1.9668, 3.5079, 4.775, 5.8161, 6.8477});
}

PhiSchedule lacs_tpu_schedule() {
  return make_schedule(
      {0.0, 0.5281, 0.6912, 1.8173, 3.8769, 5.6145, 6.7406, 7.9357});
}

PhiSchedule single_objective_schedule() {
  return make_schedule(
      {0.0, 0.3736, 0.8457, 1.8973, 3.6294, 5.0235, 6.0811, 7.0022});
}

const std::vector<std::string>& builtin_schedule_names() {
  static const std::vector<std::string> names = {"lacs_gpu", "lacs_tpu",
                                                 "single_objective"};
  return names;
}

PhiSchedule builtin_schedule(const std::string& name) {
  if (name == "lacs_gpu") return lacs_gpu_schedule();
  if (name == "lacs_tpu") return lacs_tpu_schedule();
  if (name == "single_objective") return single_objective_schedule();
  raise(ErrorCode::ParseError, "unknown builtin schedule: " + name);
}

// ---------------------------------------------------------------------------
// Phi fitting
// ---------------------------------------------------------------------------

double fit_phi(const ModelSpec& base, const ScalingCoeffs& coeffs,
               double target_latency, const cost::HardwareProfile& profile,
               long long batch, const RoundingPolicy& rounding) {
  if (!(target_latency > 0.0))
    raise(ErrorCode::BadRange, "fit_phi target latency must be positive");
  if (batch < 1) raise(ErrorCode::BadRange, "fit_phi batch must be >= 1");

  const auto continuous_latency = [&](double phi) {
    return cost::model_cost_continuous(base, coeffs, phi, profile,
                                       static_cast<double>(batch))
        .total_latency;
  };
  const double base_latency = continuous_latency(0.0);
  if (std::abs(base_latency - target_latency) <= 1e-9 * target_latency)
    return 0.0;
  if (base_latency > target_latency)
    raise(ErrorCode::BadRange,
          "base model latency already exceeds the target");
  if (coeffs.alpha == 1.0 && coeffs.beta == 1.0 && coeffs.gamma == 1.0)
    raise(ErrorCode::Unreachable,
          "coefficients (1,1,1) cannot grow latency toward the target");

  // Bracket the smooth crossing, then bisect.
  double hi = 1.0;
  while (continuous_latency(hi) < target_latency) {
    hi *= 2.0;
    if (hi > 64.0)
      raise(ErrorCode::Unreachable,
            "latency stays below the target for phi up to 64");
  }
  double lo = (hi > 1.0) ? hi / 2.0 : 0.0;
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-13 * std::max(1.0, hi);
       ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (continuous_latency(mid) < target_latency)
      lo = mid;
    else
      hi = mid;
  }
  const double phi_star = 0.5 * (lo + hi);

  // Integer-rounding repair: scan phi_star +- 0.5 and keep whichever phi the
  // rounded model maps closest to the target, preferring phi_star on ties.
  const auto rounded_latency = [&](double phi) {
    const ModelSpec scaled =
        arch::apply_compound_scaling(base, coeffs, phi, rounding);
    return cost::model_cost(arch::validate_model(scaled, batch), profile)
        .total_latency;
  };
  double best_phi = phi_star;
  double best_err = std::abs(rounded_latency(phi_star) - target_latency);
  for (int j = -30; j <= 30; ++j) {
    if (j == 0) continue;
    const double phi = phi_star + static_cast<double>(j) / 60.0;
    if (phi < 0.0) continue;
    const double err = std::abs(rounded_latency(phi) - target_latency);
    if (err < best_err * (1.0 - 1e-12)) {
      best_err = err;
      best_phi = phi;
    }
  }
  if (best_err > 0.25 * target_latency)
    raise(ErrorCode::NonMonotone,
          "no rounded model lands within 25% of the latency target near phi=" +
              std::to_string(phi_star));
  return best_phi;
}

// ---------------------------------------------------------------------------
// Grid search
// ---------------------------------------------------------------------------

namespace {

std::vector<double> axis_points(const GridAxis& axis, const char* label) {
  if (!(axis.min >= 1.0))
    raise(ErrorCode::BadRange, std::string(label) + " axis must start at >= 1");
  if (!(axis.max >= axis.min))
    raise(ErrorCode::BadRange, std::string(label) + " axis has max < min");
  if (!(axis.step > 0.0))
    raise(ErrorCode::BadRange, std::string(label) + " axis step must be > 0");
  const long long count =
      static_cast<long long>(std::floor((axis.max - axis.min) / axis.step +
                                        1e-9)) +
      1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i)
    out.push_back(axis.min + static_cast<double>(i) * axis.step);
  return out;
}

std::vector<ScalingCoeffs> lattice(const GridSpec& grid) {
  const std::vector<double> as = axis_points(grid.alpha, "alpha");
  const std::vector<double> bs = axis_points(grid.beta, "beta");
  const std::vector<double> gs = axis_points(grid.gamma, "gamma");
  std::vector<ScalingCoeffs> pts;
  pts.reserve(as.size() * bs.size() * gs.size());
  for (double a : as)
    for (double b : bs)
      for (double g : gs) pts.push_back({a, b, g});
  return pts;
}

bool lex_less(const ScalingCoeffs& x, const ScalingCoeffs& y) {
  return std::tie(x.alpha, x.beta, x.gamma) < std::tie(y.alpha, y.beta, y.gamma);
}

// Multi-objective comparator: reward desc, accuracy desc, latency asc,
// lexicographically smaller triplet.
bool better_reward(const EvalEntry& x, const EvalEntry& y) {
  if (x.reward != y.reward) return x.reward > y.reward;
  if (x.accuracy != y.accuracy) return x.accuracy > y.accuracy;
  if (x.latency != y.latency) return x.latency < y.latency;
  return lex_less(x.coeffs, y.coeffs);
}

// Single-objective comparator: accuracy desc, FLOPs asc, lexicographic.
bool better_accuracy(const EvalEntry& x, const EvalEntry& y) {
  if (x.accuracy != y.accuracy) return x.accuracy > y.accuracy;
  if (x.flops != y.flops) return x.flops < y.flops;
  return lex_less(x.coeffs, y.coeffs);
}

struct PointOutcome {
  std::optional<EvalEntry> entry;
  std::optional<SkippedEntry> skipped;
};

// Evaluates every point with `eval` across worker threads; outcomes are
// merged in point order so the run is deterministic.
template <typename Eval>
std::vector<PointOutcome> eval_points(const std::vector<ScalingCoeffs>& points,
                                      Eval eval) {
  std::vector<PointOutcome> outcomes(points.size());
  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(points.size(),
                               std::thread::hardware_concurrency() > 0
                                   ? std::thread::hardware_concurrency()
                                   : 4));
  const std::size_t chunk = (points.size() + workers - 1) / workers;
  std::vector<std::future<void>> futures;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(points.size(), begin + chunk);
    if (begin >= end) break;
    futures.push_back(std::async(std::launch::async, [&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) outcomes[i] = eval(points[i]);
    }));
  }
  for (auto& f : futures) f.get();
  return outcomes;
}

// Folds one evaluation phase into the running result; returns true if the
// incumbent changed.
bool absorb_phase(CoeffSearchResult& result, bool& have_best,
                  const std::vector<PointOutcome>& outcomes,
                  bool (*cmp)(const EvalEntry&, const EvalEntry&)) {
  bool changed = false;
  for (const PointOutcome& o : outcomes) {
    if (o.skipped) {
      result.skipped.push_back(*o.skipped);
      continue;
    }
    if (!o.entry) continue;
    result.evaluated.push_back(*o.entry);
    if (!o.entry->feasible) continue;
    if (!have_best || cmp(*o.entry, result.best_entry)) {
      result.best_entry = *o.entry;
      have_best = true;
      changed = true;
    }
  }
  return changed;
}

std::vector<ScalingCoeffs> refined_lattice(const GridSpec& grid,
                                           const ScalingCoeffs& center,
                                           int round) {
  const double shrink = std::pow(0.5, round);
  const auto axis_pts = [&](const GridAxis& axis, double mid) {
    const double step = axis.step * shrink;
    std::vector<double> vals;
    for (int k = -2; k <= 2; ++k) {
      double v = mid + k * step;
      v = std::min(axis.max, std::max(axis.min, v));
      vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
  };
  std::vector<ScalingCoeffs> pts;
  for (double a : axis_pts(grid.alpha, center.alpha))
    for (double b : axis_pts(grid.beta, center.beta))
      for (double g : axis_pts(grid.gamma, center.gamma))
        pts.push_back({a, b, g});
  return pts;
}

template <typename Eval>
CoeffSearchResult run_grid(const GridSpec& grid, Eval eval,
                           bool (*cmp)(const EvalEntry&, const EvalEntry&)) {
  const std::vector<ScalingCoeffs> points = lattice(grid);
  if (points.empty()) raise(ErrorCode::EmptyGrid, "coefficient grid is empty");
  if (grid.refine_rounds < 0)
    raise(ErrorCode::BadRange, "refine_rounds must be >= 0");

  CoeffSearchResult result;
  bool have_best = false;
  absorb_phase(result, have_best, eval_points(points, eval), cmp);
  if (!have_best)
    raise(ErrorCode::EmptyGrid, "no grid point could be evaluated");
  result.phase1_best = result.best_entry.coeffs;

  for (int round = 1; round <= grid.refine_rounds; ++round) {
    const std::vector<ScalingCoeffs> pts =
        refined_lattice(grid, result.best_entry.coeffs, round);
    absorb_phase(result, have_best, eval_points(pts, eval), cmp);
  }

  result.best = result.best_entry.coeffs;
  result.best_reward = result.best_entry.reward;
  return result;
}

}  // namespace

GridSpec GridSpec::singleton(const ScalingCoeffs& c) {
  GridSpec g;
  g.alpha = {c.alpha, c.alpha, 1.0};
  g.beta = {c.beta, c.beta, 1.0};
  g.gamma = {c.gamma, c.gamma, 1.0};
  g.refine_rounds = 0;
  return g;
}

CoeffSearchResult grid_search_coeffs(const ModelSpec& base,
                                     const cost::HardwareProfile& profile,
                                     const AccuracySurrogate& surrogate,
                                     const RewardConfig& cfg,
                                     const GridSpec& grid) {
  if (!(cfg.w < 0.0))
    raise(ErrorCode::BadRange, "reward exponent w must be negative");
  if (!(cfg.target_latency > 0.0))
    raise(ErrorCode::BadRange, "search target latency must be positive");
  const arch::ValidatedModel base_vm = arch::validate_model(base, cfg.batch);
  (void)base_vm;

  const auto eval = [&](const ScalingCoeffs& c) {
    PointOutcome out;
    if (c.alpha == 1.0 && c.beta == 1.0 && c.gamma == 1.0) {
      out.skipped = SkippedEntry{
          c, ErrorCode::Unreachable,
          "coefficients (1,1,1) cannot grow latency toward the target"};
      return out;
    }
    try {
      const double phi =
          fit_phi(base, c, cfg.target_latency, profile, cfg.batch);
      const ModelSpec scaled = arch::apply_compound_scaling(base, c, phi);
      const cost::ModelCost mc =
          cost::model_cost(arch::validate_model(scaled, cfg.batch), profile);
      EvalEntry e;
      e.coeffs = c;
      e.phi = phi;
      e.accuracy = surrogate(scaled);
      e.latency = mc.total_latency;
      e.flops = static_cast<double>(mc.total_flops) /
                static_cast<double>(cfg.batch);
      e.reward = reward(e.accuracy, e.latency, cfg);
      out.entry = e;
    } catch (const Error& err) {
      out.skipped = SkippedEntry{c, err.code(), err.what()};
    }
    return out;
  };
  return run_grid(grid, eval, &better_reward);
}

CoeffSearchResult single_objective_coeffs(const ModelSpec& base,
                                          const AccuracySurrogate& surrogate,
                                          double flops_budget_ratio,
                                          const GridSpec& grid) {
  if (!(flops_budget_ratio >= 1.0))
    raise(ErrorCode::BadRange, "FLOPs budget ratio must be >= 1");
  const double base_flops =
      static_cast<double>(cost::model_flops(base, 1));
  const double budget = flops_budget_ratio * base_flops * (1.0 + 1e-9);

  const auto eval = [&](const ScalingCoeffs& c) {
    PointOutcome out;
    try {
      const ModelSpec scaled = arch::apply_compound_scaling(base, c, 1.0);
      EvalEntry e;
      e.coeffs = c;
      e.phi = 1.0;
      e.flops = static_cast<double>(cost::model_flops(scaled, 1));
      e.accuracy = surrogate(scaled);
      e.reward = e.accuracy;
      e.feasible = e.flops <= budget;
      out.entry = e;
    } catch (const Error& err) {
      out.skipped = SkippedEntry{c, err.code(), err.what()};
    }
    return out;
  };
  return run_grid(grid, eval, &better_accuracy);
}

// ---------------------------------------------------------------------------
// Families and comparison
// ---------------------------------------------------------------------------

std::vector<FamilyLevel> scale_family(const ModelSpec& base,
                                      const ScalingCoeffs& coeffs,
                                      const PhiSchedule& schedule,
                                      const cost::HardwareProfile& profile,
                                      long long batch) {
  check_schedule(schedule);
  std::vector<double> phis;
  phis.reserve(schedule.levels.size());
  for (const PhiLevel& lv : schedule.levels) {
    if (lv.phi) {
      phis.push_back(*lv.phi);
    } else {
      double phi = fit_phi(base, coeffs, *lv.latency_target_s, profile, batch);
      if (std::abs(phi) <= 1e-9) phi = 0.0;
      phis.push_back(phi);
    }
  }
  if (phis.front() != 0.0)
    raise(ErrorCode::InvalidPhi,
          "resolved schedule must start at phi = 0, got " +
              std::to_string(phis.front()));
  for (std::size_t i = 1; i < phis.size(); ++i)
    if (!(phis[i] > phis[i - 1]))
      raise(ErrorCode::InvalidPhi,
            "resolved phi ladder is not strictly increasing at level '" +
                schedule.levels[i].name + "'");

  std::vector<FamilyLevel> family;
  family.reserve(phis.size());
  for (std::size_t i = 0; i < phis.size(); ++i) {
    FamilyLevel fl;
    fl.name = schedule.levels[i].name;
    fl.phi = phis[i];
    fl.spec = arch::apply_compound_scaling(base, coeffs, phis[i]);
    fl.cost = cost::model_cost(arch::validate_model(fl.spec, batch), profile);
    fl.depth = arch::count_total_depth(fl.spec);
    fl.resolution = fl.spec.input_resolution;
    fl.width_mult = arch::scaled_dims(coeffs, phis[i]).w_mult;
    family.push_back(std::move(fl));
  }
  return family;
}

namespace {

FamilyLevelSummary summarize(const FamilyLevel& fl, long long batch) {
  FamilyLevelSummary s;
  s.depth = fl.depth;
  s.width_mult = fl.width_mult;
  s.resolution = fl.resolution;
  s.flops = static_cast<double>(fl.cost.total_flops) /
            static_cast<double>(batch);
  s.intensity = fl.cost.aggregate_intensity;
  s.latency = fl.cost.total_latency;
  return s;
}

}  // namespace

ComparisonReport compare_scaling(const ModelSpec& base,
                                 const CoeffSearchResult& result_a,
                                 const CoeffSearchResult& result_b,
                                 const PhiSchedule& schedule,
                                 const cost::HardwareProfile& profile,
                                 long long batch) {
  const std::vector<FamilyLevel> fam_a =
      scale_family(base, result_a.best, schedule, profile, batch);
  const std::vector<FamilyLevel> fam_b =
      scale_family(base, result_b.best, schedule, profile, batch);

  ComparisonReport report;
  double log_sum = 0.0;
  for (std::size_t i = 0; i < fam_a.size(); ++i) {
    ComparisonRow row;
    row.level = fam_a[i].name;
    row.a = summarize(fam_a[i], batch);
    row.b = summarize(fam_b[i], batch);
    row.speedup_a_over_b = row.b.latency / row.a.latency;
    row.latency_rel_delta = (row.a.latency - row.b.latency) / row.b.latency;
    log_sum += std::log(row.speedup_a_over_b);
    report.rows.push_back(std::move(row));
  }
  report.geomean_speedup =
      std::exp(log_sum / static_cast<double>(report.rows.size()));
  return report;
}

RewardConfig default_reward_for(const ModelSpec& base,
                                const cost::HardwareProfile& profile,
                                double target_mult, long long batch) {
  if (!(target_mult > 0.0))
    raise(ErrorCode::BadRange, "target multiplier must be positive");
  RewardConfig cfg;
  cfg.batch = batch;
  cfg.target_latency =
      target_mult *
      cost::model_cost(arch::validate_model(base, batch), profile)
          .total_latency;
  return cfg;
}

AccuracySurrogate default_surrogate_for(const ModelSpec& base) {
  return AccuracySurrogate::synthetic_flops(
      static_cast<double>(cost::model_flops(base, 1)));
}

}  // namespace accelscale::lacs
