// End-to-end checks of the command-line tool: subcommand wiring, input
// resolution (files, profile directory, builtins), bundle emission, stdout
// selection, and the exit-code contract (0 ok / 2 usage or parse / 3 domain).
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "accelscale/arch.hpp"
#include "accelscale/cost.hpp"
#include "accelscale/lacs.hpp"
#include "accelscale/nas.hpp"

using nlohmann::json;
namespace arch = accelscale::arch;
namespace cost = accelscale::cost;
namespace lacs = accelscale::lacs;
namespace nas = accelscale::nas;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the built binary through the shell, capturing stdout+stderr.
CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const fs::path capture =
      fs::temp_directory_path() /
      ("accelscale_cli_capture_" + std::to_string(++counter) + ".txt");
  const std::string cmd = env_prefix + "\"" ACCELSCALE_CLI_PATH "\" " + args +
                          " > \"" + capture.string() + "\" 2>&1";
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = read_file(capture);
  fs::remove(capture);
  return r;
}

fs::path fresh_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

std::string last_nonempty_line(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  REQUIRE(!lines.empty());
  return lines.back();
}

std::size_t count_substr(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) ++n;
  return n;
}

// 1024-candidate space: only stages 4 and 5 stay free, no reshape choice.
nas::SearchSpaceConfig small_space() {
  nas::SearchSpaceConfig cfg = nas::default_space();
  const nas::StageChoice pinned{nas::ConvType::mbconv, 3, 6, 0.25,
                                arch::ActivationKind::relu};
  for (int i : {0, 1, 2, 3, 6}) cfg.skeleton.stages[i].fixed_choice = pinned;
  cfg.choices.s2d_positions = {std::nullopt};
  return cfg;
}

}  // namespace

TEST_CASE("cli: analyze prints a cost table for a builtin model") {
  const CliResult csv =
      run_cli("analyze --model efficientnet_b0 --profile tpu_v3_like");
  CHECK(csv.exit_code == 0);
  CHECK(first_line(csv.out) == "stage,op,W,Q_bytes,I,regime,latency_s");
  CHECK(csv.out.find("\ntotal,,387668192,") != std::string::npos);

  const CliResult js = run_cli(
      "analyze --model efficientnet_b0 --profile tpu_v3_like --format json");
  CHECK(js.exit_code == 0);
  const json parsed = json::parse(js.out);
  CHECK(parsed["model"] == "efficientnet_b0");
  CHECK(parsed["profile"] == "tpu_v3_like");
  CHECK(parsed["totals"]["W"] == 387668192);
}

TEST_CASE("cli: analyze resolves model files and rejects unknown names") {
  const fs::path dir = fresh_dir("accelscale_cli_models");
  const fs::path model_path = dir / "model.json";
  arch::save_model_file(arch::build_efficientnet_b0(), model_path.string());

  const CliResult from_file = run_cli("analyze --model \"" +
                                      model_path.string() +
                                      "\" --profile tpu_v3_like");
  CHECK(from_file.exit_code == 0);
  CHECK(from_file.out.find("\ntotal,,387668192,") != std::string::npos);

  CHECK(run_cli("analyze --model no_such_model").exit_code == 2);
  CHECK(run_cli("analyze --model efficientnet_b0 --profile no_such_profile")
            .exit_code == 2);

  const fs::path broken = dir / "broken.json";
  {
    std::ofstream out(broken);
    out << "{not json";
  }
  CHECK(run_cli("analyze --model \"" + broken.string() + "\"").exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("analyze --bogus-flag 1").exit_code == 2);
  CHECK(run_cli("analyze --batch 0").exit_code == 2);
  CHECK(run_cli("analyze --format xml").exit_code == 2);
  CHECK(run_cli("compare --family-a only_one_given.json").exit_code == 2);
  CHECK(run_cli("scale --coeffs not-a-triplet").exit_code == 2);
}

TEST_CASE("cli: scale writes a verifiable family bundle") {
  const fs::path dir = fresh_dir("accelscale_cli_scale");
  const std::string out_a = (dir / "a").string();
  const CliResult r = run_cli(
      "scale --model efficientnet_b0 --profile gpu_v100_like "
      "--coeffs 1.28,1.17,1.07 --schedule lacs_gpu --batch 128 --out \"" +
      out_a + "\"");
  CHECK(r.exit_code == 0);
  REQUIRE(fs::exists(fs::path(out_a) / "family.csv"));
  REQUIRE(fs::exists(fs::path(out_a) / "family.json"));
  REQUIRE(fs::exists(fs::path(out_a) / "manifest.json"));

  const std::string family_csv = read_file(fs::path(out_a) / "family.csv");
  CHECK(first_line(family_csv) ==
        "level,phi,depth,resolution,width_mult,flops,intensity,latency_s");
  CHECK(count_lines(family_csv) == 9);  // header + B0..B7

  const json family = json::parse(read_file(fs::path(out_a) / "family.json"));
  REQUIRE(family["levels"].size() == 8);
  CHECK(family["levels"][0]["level"] == "B0");
  CHECK(family["levels"][0]["depth"] == 16);
  CHECK(family["levels"][0]["resolution"] == 224);
  CHECK(family["coeffs"]["beta"] == 1.17);

  // The manifest hashes the exact bytes on disk.
  const json manifest = json::parse(read_file(fs::path(out_a) / "manifest.json"));
  REQUIRE(manifest["files"].size() == 2);
  CHECK(manifest["files"][0]["name"] == "family.csv");
  CHECK(manifest["files"][1]["name"] == "family.json");

  // Reruns are byte-identical.
  const std::string out_b = (dir / "b").string();
  const CliResult r2 = run_cli(
      "scale --model efficientnet_b0 --profile gpu_v100_like "
      "--coeffs 1.28,1.17,1.07 --schedule lacs_gpu --batch 128 --out \"" +
      out_b + "\"");
  CHECK(r2.exit_code == 0);
  CHECK(read_file(fs::path(out_b) / "family.csv") == family_csv);
  CHECK(read_file(fs::path(out_b) / "manifest.json") ==
        read_file(fs::path(out_a) / "manifest.json"));
  fs::remove_all(dir);
}

TEST_CASE("cli: scale distinguishes domain failures from usage errors") {
  // Coefficients below one are rejected by the scaling rules: domain error.
  CHECK(run_cli("scale --model efficientnet_b0 --coeffs 0.9,1,1").exit_code ==
        3);

  // A latency-target schedule that identity coefficients cannot reach.
  const fs::path dir = fresh_dir("accelscale_cli_sched");
  lacs::PhiSchedule sched;
  sched.levels.push_back({"L0", 0.0, std::nullopt});
  sched.levels.push_back({"L1", std::nullopt, 1.0});  // 1 second: far beyond B0
  const fs::path sched_path = dir / "sched.json";
  lacs::save_schedule_file(sched, sched_path.string());
  CHECK(run_cli("scale --model efficientnet_b0 --coeffs 1,1,1 --schedule \"" +
                sched_path.string() + "\"")
            .exit_code == 3);

  // Unknown schedule name: input resolution failure.
  CHECK(run_cli("scale --model efficientnet_b0 --coeffs 1.2,1.1,1.1 "
                "--schedule no_such_schedule")
            .exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("cli: scale without coefficients runs the grid search first") {
  const fs::path dir = fresh_dir("accelscale_cli_scale_search");
  const CliResult r = run_cli(
      "scale --profile tpu_v3_like --schedule lacs_tpu "
      "--grid 1.0:1.1:0.05 --grid 1.0:1.1:0.05 --grid 1.0:1.0:0.05 "
      "--out \"" + dir.string() + "\"");
  CHECK(r.exit_code == 0);
  REQUIRE(fs::exists(dir / "coeff_search.json"));
  const json found = json::parse(read_file(dir / "coeff_search.json"));
  CHECK(found["alpha"].get<double>() >= 1.0);
  CHECK(found["beta"].get<double>() >= 1.0);
  CHECK(found["gamma"].get<double>() == 1.0);  // single-point gamma axis
  CHECK(found["evaluated"].get<long long>() > 0);
  CHECK(found.contains("reward"));
  REQUIRE(fs::exists(dir / "family.json"));
  fs::remove_all(dir);
}

TEST_CASE("cli: search emits a reproducible log, pareto front, and best") {
  const fs::path dir = fresh_dir("accelscale_cli_search");
  const fs::path space_path = dir / "space.json";
  nas::save_config_file(small_space(), space_path.string());

  const std::string common =
      "search --space \"" + space_path.string() +
      "\" --profile tpu_v3_like --budget 60 --seed 5 --population 16 "
      "--samples 4";
  const std::string out_a = (dir / "a").string();
  const CliResult r = run_cli(common + " --out \"" + out_a + "\"");
  CHECK(r.exit_code == 0);
  REQUIRE(fs::exists(fs::path(out_a) / "search_log.jsonl"));
  REQUIRE(fs::exists(fs::path(out_a) / "pareto.csv"));
  REQUIRE(fs::exists(fs::path(out_a) / "best.json"));
  REQUIRE(fs::exists(fs::path(out_a) / "manifest.json"));

  const std::string log = read_file(fs::path(out_a) / "search_log.jsonl");
  CHECK(count_lines(log) == 60);
  const json best = json::parse(read_file(fs::path(out_a) / "best.json"));
  CHECK(best["evaluations"] == 60);
  CHECK(best["best"]["reward"].get<double>() > 0.0);
  CHECK(first_line(read_file(fs::path(out_a) / "pareto.csv")) ==
        "index,accuracy,latency_s,flops,reward");

  // Same seed, same bytes.
  const std::string out_b = (dir / "b").string();
  CHECK(run_cli(common + " --out \"" + out_b + "\"").exit_code == 0);
  CHECK(read_file(fs::path(out_b) / "search_log.jsonl") == log);

  // Without --out the best-candidate JSON goes to stdout.
  const CliResult to_stdout = run_cli(common);
  CHECK(to_stdout.exit_code == 0);
  const json best2 = json::parse(to_stdout.out);
  CHECK(best2["best"]["index"] == best["best"]["index"]);
  fs::remove_all(dir);
}

TEST_CASE("cli: compare checks ladders level by level") {
  const fs::path dir = fresh_dir("accelscale_cli_compare");
  const std::string fam_dir = (dir / "fam").string();
  REQUIRE(run_cli("scale --model efficientnet_b0 --profile gpu_v100_like "
                  "--coeffs 1.28,1.17,1.07 --out \"" + fam_dir + "\"")
              .exit_code == 0);
  const std::string family = (fs::path(fam_dir) / "family.json").string();

  const CliResult self = run_cli("compare --family-a \"" + family +
                                 "\" --family-b \"" + family + "\"");
  CHECK(self.exit_code == 0);
  CHECK(first_line(self.out) ==
        "level,depth_a,resolution_a,latency_a_s,depth_b,resolution_b,"
        "latency_b_s,speedup_a_over_b");
  CHECK(last_nonempty_line(self.out) == "geomean,,,,,,,1");

  const CliResult as_json = run_cli("compare --family-a \"" + family +
                                    "\" --family-b \"" + family +
                                    "\" --format json");
  CHECK(as_json.exit_code == 0);
  CHECK(json::parse(as_json.out)["geomean_speedup"] == 1.0);

  // A ladder with different level names cannot be zipped.
  const std::string other_dir = (dir / "other").string();
  lacs::PhiSchedule sched;
  sched.levels.push_back({"L0", 0.0, std::nullopt});
  sched.levels.push_back({"L1", 1.0, std::nullopt});
  const fs::path sched_path = dir / "sched.json";
  lacs::save_schedule_file(sched, sched_path.string());
  REQUIRE(run_cli("scale --model efficientnet_b0 --profile gpu_v100_like "
                  "--coeffs 1.28,1.17,1.07 --schedule \"" +
                  sched_path.string() + "\" --out \"" + other_dir + "\"")
              .exit_code == 0);
  const std::string other =
      (fs::path(other_dir) / "family.json").string();
  CHECK(run_cli("compare --family-a \"" + family + "\" --family-b \"" + other +
                "\"")
            .exit_code == 2);
  CHECK(run_cli("compare --family-a \"" + family +
                "\" --family-b /nonexistent/family.json")
            .exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("cli: roofline renders builtin profiles and model markers") {
  const CliResult all = run_cli("roofline --model efficientnet_b0 --batch 128");
  CHECK(all.exit_code == 0);
  CHECK(all.out.rfind("<svg ", 0) == 0);
  CHECK(count_substr(all.out, "<polyline ") == 3);  // all builtin profiles
  CHECK(count_substr(all.out, "<circle ") == 3);    // one marker per profile
  CHECK(all.out.find("efficientnet_b0@tpu_v3_like") != std::string::npos);

  const CliResult one =
      run_cli("roofline --profile tpu_v3_like --model efficientnet_b0");
  CHECK(one.exit_code == 0);
  CHECK(count_substr(one.out, "<polyline ") == 1);
  CHECK(count_substr(one.out, "<circle ") == 1);

  const fs::path dir = fresh_dir("accelscale_cli_roofline");
  CHECK(run_cli("roofline --out \"" + dir.string() + "\"").exit_code == 0);
  CHECK(fs::exists(dir / "roofline.svg"));
  CHECK(fs::exists(dir / "manifest.json"));
  fs::remove_all(dir);
}

TEST_CASE("cli: profiles resolve through the profile directory environment") {
  const fs::path dir = fresh_dir("accelscale_cli_profdir");
  cost::HardwareProfile custom = cost::builtin_profile("cpu_like");
  custom.name = "deskside";
  cost::save_profile_file(custom, (dir / "deskside.json").string());

  // Without the environment variable the name does not resolve.
  CHECK(run_cli("analyze --model efficientnet_b0 --profile deskside")
            .exit_code == 2);

  const std::string env =
      "ACCELSCALE_PROFILE_DIR=\"" + dir.string() + "\" ";
  const CliResult r = run_cli(
      "analyze --model efficientnet_b0 --profile deskside --format json", env);
  CHECK(r.exit_code == 0);
  const json parsed = json::parse(r.out);
  CHECK(parsed["profile"] == "deskside");
  CHECK(parsed["totals"]["W"] == 387668192);
  fs::remove_all(dir);
}
