#include "accelscale/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "accelscale/errors.hpp"

namespace accelscale::report {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Formatting and hashing
// ---------------------------------------------------------------------------

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double round6(double v) { return std::strtod(fmt6(v).c_str(), nullptr); }

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

namespace {

// Exact integer rendering for work/traffic counts carried in doubles.
std::string fmt_int(double v) {
  return std::to_string(static_cast<long long>(std::llround(v)));
}

}  // namespace

// ---------------------------------------------------------------------------
// Bundles
// ---------------------------------------------------------------------------

void ReportBundle::add(std::string name, std::string content) {
  files.push_back({std::move(name), std::move(content)});
}

json ReportBundle::manifest() const {
  std::vector<const ReportFile*> sorted;
  sorted.reserve(files.size());
  for (const ReportFile& f : files) sorted.push_back(&f);
  std::sort(sorted.begin(), sorted.end(),
            [](const ReportFile* a, const ReportFile* b) {
              return a->name < b->name;
            });
  json entries = json::array();
  for (const ReportFile* f : sorted)
    entries.push_back(
        json{{"name", f->name}, {"fnv1a64", hex64(fnv1a64(f->content))}});
  return json{{"files", entries}};
}

void ReportBundle::write_to(const std::string& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    raise(ErrorCode::ParseError,
          "cannot create output directory " + dir + ": " + ec.message());
  const auto write_one = [&](const std::string& name,
                             const std::string& content) {
    const std::filesystem::path p = std::filesystem::path(dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out)
      raise(ErrorCode::ParseError, "cannot write report file: " + p.string());
    out << content;
  };
  for (const ReportFile& f : files) write_one(f.name, f.content);
  write_one("manifest.json", manifest().dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Cost table
// ---------------------------------------------------------------------------

std::string cost_table_csv(const cost::ModelCost& mc) {
  std::ostringstream out;
  out << "stage,op,W,Q_bytes,I,regime,latency_s\n";
  for (const cost::StageCost& sc : mc.stages) {
    out << sc.index << ',' << sc.op_name << ',' << fmt_int(sc.flops) << ','
        << fmt_int(sc.mem_bytes) << ',' << fmt6(sc.intensity) << ','
        << cost::regime_name(sc.regime) << ',' << fmt6(sc.latency) << '\n';
  }
  out << "total,," << fmt_int(mc.total_flops) << ',' << fmt_int(mc.total_bytes)
      << ',' << fmt6(mc.aggregate_intensity) << ",," << fmt6(mc.total_latency)
      << '\n';
  return out.str();
}

json cost_table_json(const std::string& model_name,
                     const std::string& profile_name,
                     const cost::ModelCost& mc) {
  json stages = json::array();
  for (const cost::StageCost& sc : mc.stages) {
    stages.push_back(json{{"stage", sc.index},
                          {"op", sc.op_name},
                          {"repeats", sc.repeats},
                          {"W", static_cast<long long>(std::llround(sc.flops))},
                          {"Q_bytes",
                           static_cast<long long>(std::llround(sc.mem_bytes))},
                          {"I", round6(sc.intensity)},
                          {"regime", cost::regime_name(sc.regime)},
                          {"latency_s", round6(sc.latency)}});
  }
  return json{
      {"model", model_name},
      {"profile", profile_name},
      {"batch", mc.batch},
      {"stages", stages},
      {"totals",
       json{{"W", static_cast<long long>(std::llround(mc.total_flops))},
            {"Q_bytes", static_cast<long long>(std::llround(mc.total_bytes))},
            {"I", round6(mc.aggregate_intensity)},
            {"latency_s", round6(mc.total_latency)},
            {"achieved_efficiency", round6(mc.achieved_efficiency)}}}};
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

namespace {

lacs::FamilyLevelSummary summarize_level(const lacs::FamilyLevel& fl,
                                         long long batch) {
  lacs::FamilyLevelSummary s;
  s.depth = fl.depth;
  s.width_mult = fl.width_mult;
  s.resolution = fl.resolution;
  s.flops = fl.cost.total_flops / static_cast<double>(batch);
  s.intensity = fl.cost.aggregate_intensity;
  s.latency = fl.cost.total_latency;
  return s;
}

}  // namespace

std::string family_csv(const std::vector<lacs::FamilyLevel>& family,
                       long long batch) {
  std::ostringstream out;
  out << "level,phi,depth,resolution,width_mult,flops,intensity,latency_s\n";
  for (const lacs::FamilyLevel& fl : family) {
    const lacs::FamilyLevelSummary s = summarize_level(fl, batch);
    out << fl.name << ',' << fmt6(fl.phi) << ',' << s.depth << ','
        << s.resolution << ',' << fmt6(s.width_mult) << ',' << fmt6(s.flops)
        << ',' << fmt6(s.intensity) << ',' << fmt6(s.latency) << '\n';
  }
  return out.str();
}

json family_json(const std::string& model_name,
                 const std::string& profile_name,
                 const arch::ScalingCoeffs& coeffs,
                 const std::vector<lacs::FamilyLevel>& family,
                 long long batch) {
  json levels = json::array();
  for (const lacs::FamilyLevel& fl : family) {
    const lacs::FamilyLevelSummary s = summarize_level(fl, batch);
    levels.push_back(json{{"level", fl.name},
                          {"phi", round6(fl.phi)},
                          {"depth", s.depth},
                          {"resolution", s.resolution},
                          {"width_mult", round6(s.width_mult)},
                          {"flops", round6(s.flops)},
                          {"intensity", round6(s.intensity)},
                          {"latency_s", round6(s.latency)}});
  }
  return json{{"model", model_name},
              {"profile", profile_name},
              {"batch", batch},
              {"coeffs", json{{"alpha", round6(coeffs.alpha)},
                              {"beta", round6(coeffs.beta)},
                              {"gamma", round6(coeffs.gamma)}}},
              {"levels", levels}};
}

FamilySummaryFile family_summary_from_json(const json& j) {
  if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array())
    raise(ErrorCode::ParseError, "family summary needs a 'levels' array");
  FamilySummaryFile f;
  if (j.contains("model")) f.model = j["model"].get<std::string>();
  if (j.contains("profile")) f.profile = j["profile"].get<std::string>();
  if (j.contains("batch")) f.batch = j["batch"].get<long long>();
  if (j.contains("coeffs")) {
    const json& c = j["coeffs"];
    f.coeffs.alpha = c.value("alpha", 1.0);
    f.coeffs.beta = c.value("beta", 1.0);
    f.coeffs.gamma = c.value("gamma", 1.0);
  }
  for (const json& l : j["levels"]) {
    for (const char* key :
         {"level", "depth", "resolution", "width_mult", "flops", "intensity",
          "latency_s"})
      if (!l.contains(key))
        raise(ErrorCode::ParseError,
              "family level is missing key '" + std::string(key) + "'");
    lacs::FamilyLevelSummary s;
    s.depth = l["depth"].get<long long>();
    s.width_mult = l["width_mult"].get<double>();
    s.resolution = l["resolution"].get<int>();
    s.flops = l["flops"].get<double>();
    s.intensity = l["intensity"].get<double>();
    s.latency = l["latency_s"].get<double>();
    f.levels.emplace_back(l["level"].get<std::string>(), s);
  }
  if (f.levels.empty())
    raise(ErrorCode::ParseError, "family summary has no levels");
  return f;
}

FamilySummaryFile load_family_summary(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::ParseError, "cannot open family file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError,
          "invalid JSON in family file " + path + ": " + e.what());
  }
  return family_summary_from_json(j);
}

lacs::ComparisonReport compare_from_summaries(const FamilySummaryFile& a,
                                              const FamilySummaryFile& b) {
  if (a.levels.size() != b.levels.size())
    raise(ErrorCode::LevelMismatch,
          "families have different level counts (" +
              std::to_string(a.levels.size()) + " vs " +
              std::to_string(b.levels.size()) + ")");
  lacs::ComparisonReport report;
  double log_sum = 0.0;
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    if (a.levels[i].first != b.levels[i].first)
      raise(ErrorCode::LevelMismatch,
            "level name mismatch at index " + std::to_string(i) + ": '" +
                a.levels[i].first + "' vs '" + b.levels[i].first + "'");
    lacs::ComparisonRow row;
    row.level = a.levels[i].first;
    row.a = a.levels[i].second;
    row.b = b.levels[i].second;
    if (!(row.a.latency > 0.0) || !(row.b.latency > 0.0))
      raise(ErrorCode::BadRange,
            "family latencies must be positive to compare");
    row.speedup_a_over_b = row.b.latency / row.a.latency;
    row.latency_rel_delta = (row.a.latency - row.b.latency) / row.b.latency;
    log_sum += std::log(row.speedup_a_over_b);
    report.rows.push_back(std::move(row));
  }
  report.geomean_speedup =
      std::exp(log_sum / static_cast<double>(report.rows.size()));
  return report;
}

std::string compare_csv(const lacs::ComparisonReport& report) {
  std::ostringstream out;
  out << "level,depth_a,resolution_a,latency_a_s,depth_b,resolution_b,"
         "latency_b_s,speedup_a_over_b\n";
  for (const lacs::ComparisonRow& row : report.rows) {
    out << row.level << ',' << row.a.depth << ',' << row.a.resolution << ','
        << fmt6(row.a.latency) << ',' << row.b.depth << ','
        << row.b.resolution << ',' << fmt6(row.b.latency) << ','
        << fmt6(row.speedup_a_over_b) << '\n';
  }
  out << "geomean,,,,,,," << fmt6(report.geomean_speedup) << '\n';
  return out.str();
}

json compare_json(const lacs::ComparisonReport& report) {
  json rows = json::array();
  for (const lacs::ComparisonRow& row : report.rows) {
    rows.push_back(json{
        {"level", row.level},
        {"a", json{{"depth", row.a.depth},
                   {"resolution", row.a.resolution},
                   {"flops", round6(row.a.flops)},
                   {"intensity", round6(row.a.intensity)},
                   {"latency_s", round6(row.a.latency)}}},
        {"b", json{{"depth", row.b.depth},
                   {"resolution", row.b.resolution},
                   {"flops", round6(row.b.flops)},
                   {"intensity", round6(row.b.intensity)},
                   {"latency_s", round6(row.b.latency)}}},
        {"speedup_a_over_b", round6(row.speedup_a_over_b)},
        {"latency_rel_delta", round6(row.latency_rel_delta)}});
  }
  return json{{"rows", rows},
              {"geomean_speedup", round6(report.geomean_speedup)}};
}

// ---------------------------------------------------------------------------
// Search artifacts
// ---------------------------------------------------------------------------

json candidate_json(const nas::Candidate& cand) {
  json stages = json::array();
  for (const nas::StageChoice& c : cand.stages)
    stages.push_back(
        json{{"conv_type", nas::conv_type_name(c.conv_type)},
             {"kernel", c.kernel},
             {"expansion", c.expansion},
             {"se_ratio", round6(c.se_ratio)},
             {"activation", arch::activation_name(c.activation)}});
  json out{{"stages", stages}};
  if (cand.s2d_position)
    out["s2d_position"] = *cand.s2d_position;
  else
    out["s2d_position"] = nullptr;
  return out;
}

std::string search_log_jsonl(const std::vector<nas::EvalRecord>& log) {
  std::ostringstream out;
  for (const nas::EvalRecord& rec : log) {
    const json line{{"index", rec.index},
                    {"candidate", candidate_json(rec.candidate)},
                    {"accuracy", round6(rec.accuracy)},
                    {"latency_s", round6(rec.latency)},
                    {"reward", round6(rec.reward)}};
    out << line.dump() << '\n';
  }
  return out.str();
}

std::string pareto_csv(std::vector<nas::EvalRecord> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const nas::EvalRecord& a, const nas::EvalRecord& b) {
              if (a.latency != b.latency) return a.latency < b.latency;
              return a.index < b.index;
            });
  std::ostringstream out;
  out << "index,accuracy,latency_s,flops,reward\n";
  for (const nas::EvalRecord& rec : entries)
    out << rec.index << ',' << fmt6(rec.accuracy) << ',' << fmt6(rec.latency)
        << ',' << fmt6(rec.flops) << ',' << fmt6(rec.reward) << '\n';
  return out.str();
}

json search_result_json(const nas::SearchResult& result) {
  return json{{"evaluations", result.evaluations},
              {"best", json{{"index", result.best.index},
                            {"candidate", candidate_json(result.best.candidate)},
                            {"accuracy", round6(result.best.accuracy)},
                            {"latency_s", round6(result.best.latency)},
                            {"flops", round6(result.best.flops)},
                            {"reward", round6(result.best.reward)}}},
              {"pareto_size",
               static_cast<long long>(result.pareto.size())}};
}

// ---------------------------------------------------------------------------
// Roofline SVG
// ---------------------------------------------------------------------------

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 560.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 32.0;
constexpr double kMarginBottom = 56.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

std::string xy(double x, double y) { return fmt6(x) + "," + fmt6(y); }

}  // namespace

std::string roofline_svg(const std::vector<cost::HardwareProfile>& profiles,
                         const std::vector<RooflineModelPoint>& points) {
  if (profiles.empty())
    raise(ErrorCode::BadRange, "roofline chart needs at least one profile");

  // Decade-aligned ranges covering every ridge, slope, and model point.
  double min_i = 1e300, max_i = 0.0, min_r = 1e300, max_r = 0.0;
  for (const cost::HardwareProfile& p : profiles) {
    const double ridge = cost::ridge_point(p);
    min_i = std::min(min_i, ridge / 8.0);
    max_i = std::max(max_i, ridge * 8.0);
    max_r = std::max(max_r, std::max(p.peak_matrix_ops, p.peak_vector_ops));
    min_r = std::min(min_r, p.mem_bandwidth_bytes * (ridge / 8.0));
  }
  for (const RooflineModelPoint& pt : points) {
    if (!(pt.intensity > 0.0) || !(pt.achieved > 0.0))
      raise(ErrorCode::BadRange,
            "roofline model points need positive intensity and rate");
    min_i = std::min(min_i, pt.intensity);
    max_i = std::max(max_i, pt.intensity);
    min_r = std::min(min_r, pt.achieved);
    max_r = std::max(max_r, pt.achieved);
  }
  const double x_lo = std::floor(std::log10(min_i));
  const double x_hi = std::ceil(std::log10(max_i) + 1e-12);
  const double y_lo = std::floor(std::log10(min_r));
  const double y_hi = std::ceil(std::log10(max_r) + 1e-12);
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto map_x = [&](double v) {
    return kMarginLeft + (std::log10(v) - x_lo) / (x_hi - x_lo) * plot_w;
  };
  const auto map_y = [&](double v) {
    return kMarginTop + plot_h -
           (std::log10(v) - y_lo) / (y_hi - y_lo) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt6(kWidth)
      << "\" height=\"" << fmt6(kHeight) << "\" viewBox=\"0 0 "
      << fmt6(kWidth) << ' ' << fmt6(kHeight) << "\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << fmt6(kWidth) << "\" height=\""
      << fmt6(kHeight) << "\" fill=\"white\"/>\n";
  svg << "  <text x=\"" << fmt6(kWidth / 2) << "\" y=\""
      << fmt6(kHeight - 12.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">operational intensity (ops/byte)</text>\n";
  svg << "  <text x=\"18\" y=\"" << fmt6(kHeight / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << fmt6(kHeight / 2) << ")\">attainable rate (ops/s)</text>\n";

  // Decade gridlines with labels.
  for (int d = static_cast<int>(x_lo); d <= static_cast<int>(x_hi); ++d) {
    const double v = std::pow(10.0, d);
    const double x = map_x(v);
    svg << "  <line x1=\"" << fmt6(x) << "\" y1=\"" << fmt6(kMarginTop)
        << "\" x2=\"" << fmt6(x) << "\" y2=\"" << fmt6(kMarginTop + plot_h)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg << "  <text x=\"" << fmt6(x) << "\" y=\""
        << fmt6(kMarginTop + plot_h + 18.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">1e"
        << d << "</text>\n";
  }
  for (int d = static_cast<int>(y_lo); d <= static_cast<int>(y_hi); ++d) {
    const double v = std::pow(10.0, d);
    const double y = map_y(v);
    svg << "  <line x1=\"" << fmt6(kMarginLeft) << "\" y1=\"" << fmt6(y)
        << "\" x2=\"" << fmt6(kMarginLeft + plot_w) << "\" y2=\"" << fmt6(y)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg << "  <text x=\"" << fmt6(kMarginLeft - 6.0) << "\" y=\""
        << fmt6(y + 4.0)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">1e"
        << d << "</text>\n";
  }
  svg << "  <rect x=\"" << fmt6(kMarginLeft) << "\" y=\"" << fmt6(kMarginTop)
      << "\" width=\"" << fmt6(plot_w) << "\" height=\"" << fmt6(plot_h)
      << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

  // One memory-slope + flat-peak polyline per profile.
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const cost::HardwareProfile& p = profiles[i];
    const double ridge = cost::ridge_point(p);
    const double peak = std::max(p.peak_matrix_ops, p.peak_vector_ops);
    const double i_start = std::pow(10.0, x_lo);
    const double i_end = std::pow(10.0, x_hi);
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg << "  <polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\""
        << xy(map_x(i_start), map_y(i_start * p.mem_bandwidth_bytes)) << ' '
        << xy(map_x(ridge), map_y(peak)) << ' '
        << xy(map_x(i_end), map_y(peak)) << "\"/>\n";
    svg << "  <text x=\"" << fmt6(map_x(ridge)) << "\" y=\""
        << fmt6(map_y(peak) - 8.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\" fill=\""
        << color << "\">" << p.name << "</text>\n";
  }

  // Model markers.
  for (const RooflineModelPoint& pt : points) {
    const double x = map_x(pt.intensity);
    const double y = map_y(pt.achieved);
    svg << "  <circle cx=\"" << fmt6(x) << "\" cy=\"" << fmt6(y)
        << "\" r=\"4\" fill=\"#111111\"/>\n";
    svg << "  <text x=\"" << fmt6(x + 7.0) << "\" y=\"" << fmt6(y - 7.0)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << pt.label
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace accelscale::report
