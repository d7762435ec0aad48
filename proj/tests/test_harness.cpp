#include <cstdio>
#include <fstream>
#include <sstream>

#include "bongard/error.hpp"
#include "bongard/harness.hpp"
#include "test_util.hpp"

using namespace bongard;
using namespace bongard::harness;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_substr(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

void write_run(const fs::path& dir, const std::vector<std::vector<int>>& seeds) {
  fs::create_directories(dir);
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    std::ofstream out(dir / ("seed" + std::to_string(s) + ".csv"));
    out << "# schema=1\n" << kCsvHeader << '\n';
    for (std::size_t e = 0; e < seeds[s].size(); ++e) {
      EpisodeMetrics m;
      m.episode = static_cast<int>(e);
      m.steps = 144;
      m.raw_return = seeds[s][e];
      out << csv_row(s, m) << '\n';
    }
  }
}

GenerateOptions gen_options(const fs::path& out, int count, const std::string& text = "fill") {
  GenerateOptions g;
  g.concept_spec = text;
  g.count = count;
  g.seed = 1;
  g.out_dir = out;
  return g;
}

}  // namespace

TEST_CASE("generate writes loadable, reproducible datasets") {
  TempDir tmp("gen");
  const json manifest = cmd_generate(gen_options(tmp.path / "a", 5));
  CHECK(manifest.at("problems").size() == 5);
  for (int id = 0; id < 5; ++id) {
    char name[8];
    std::snprintf(name, sizeof name, "%04d", id);
    const BongardProblem bp = load_bp(tmp.path / "a" / name);
    CHECK(bp.id() == id);
    CHECK(fs::exists(tmp.path / "a" / name / "concept.json"));
  }
  cmd_generate(gen_options(tmp.path / "b", 5));
  for (const char* f : {"manifest.json", "0003/concept.json", "0003/07.pbm"}) {
    CHECK(slurp(tmp.path / "a" / f) == slurp(tmp.path / "b" / f));
  }
  const Dataset ds = load_dataset(tmp.path / "a");
  REQUIRE(ds.problems.size() == 5);
  CHECK(ds.problems[2]->solution().has_value());
  CHECK(ds.problems[2]->has_ground_truth());
  CHECK_ERROR_CODE(ds.find(17), ErrorCode::MissingFile);

  const json empty = cmd_generate(gen_options(tmp.path / "c", 0));
  CHECK(empty.at("problems").empty());
  CHECK(load_dataset(tmp.path / "c").problems.empty());
}

TEST_CASE("default split keeps concept keys apart") {
  TempDir tmp("split");
  cmd_generate(gen_options(tmp.path, 26, "mixed"));
  const Dataset ds = load_dataset(tmp.path);
  const auto [train, eval] = default_split(ds);
  CHECK(train.size() + eval.size() == 26);
  CHECK_FALSE(eval.empty());
  for (int e : eval) {
    const std::string key = ds.concept_keys[static_cast<std::size_t>(e)];
    for (int t : train) CHECK(ds.concept_keys[static_cast<std::size_t>(t)] != key);
  }

  TempDir single("split1");
  cmd_generate(gen_options(single.path, 4));
  CHECK(default_split(load_dataset(single.path)).second.empty());
}

TEST_CASE("config precedence and validation") {
  RunConfig base;
  const RunConfig c = apply_json(base, json{{"episodes", 50},
                                             {"encoder", "mlp"},
                                             {"seeds", {3, 4}},
                                             {"learner", {{"learning_rate", 1e-3}}}});
  CHECK(c.training.episodes == 50);
  CHECK(c.training.policy.encoder == EncoderKind::Mlp);
  CHECK(c.seeds == std::vector<std::uint64_t>{3, 4});
  CHECK(c.training.learner.learning_rate == 1e-3);
  CHECK(c.training.learner.algorithm == Algorithm::Ppo);
  CHECK(apply_json(base, to_json(c)).training.episodes == 50);

  RunConfig bad = c;
  bad.seeds.clear();
  CHECK_ERROR_CODE(validate(bad), ErrorCode::ConfigError);
  bad = c;
  bad.train_ids = {1, 2};
  bad.eval_ids = {2};
  CHECK_ERROR_CODE(validate(bad), ErrorCode::ConfigError);
  CHECK_ERROR_CODE(apply_json(base, json{{"algorithm", "dqn"}}), ErrorCode::ConfigError);
  CHECK_ERROR_CODE(apply_json(base, json{{"episodes", "many"}}), ErrorCode::ConfigError);
}

TEST_CASE("train writes csv, checkpoint and metadata") {
  TempDir tmp("train");
  cmd_generate(gen_options(tmp.path / "data", 3));
  const Dataset ds = load_dataset(tmp.path / "data");
  RunConfig cfg;
  cfg.name = "smoke";
  cfg.out_dir = tmp.path / "runs";
  cfg.seeds = {0, 1};
  cfg.train_ids = {0, 1, 2};
  cfg.training.episodes = 5;
  cfg.training.env.episode_length = 36;
  cfg.training.learner.episodes_per_batch = 2;
  const auto outcomes = cmd_train(cfg, ds);
  REQUIRE(outcomes.size() == 2);
  for (const SeedOutcome& o : outcomes) {
    CHECK(o.ok);
    const std::string text = slurp(o.csv);
    CHECK(text.rfind("# schema=1\n" + std::string(kCsvHeader) + "\n", 0) == 0);
    CHECK(count_substr(text, "\n") == 2 + 5);
  }
  const fs::path dir = tmp.path / "runs" / "smoke";
  CHECK(fs::exists(dir / "seed1.checkpoint.json"));
  const json meta = json::parse(slurp(dir / "seed0.meta.json"));
  CHECK(meta.at("config").at("episodes") == 5);
  CHECK(meta.contains("version"));
  CHECK(meta.contains("wall_time_s"));

  // Same seed again: identical metrics.
  const std::string first = slurp(dir / "seed0.csv");
  cmd_train(cfg, ds);
  CHECK(slurp(dir / "seed0.csv") == first);

  EvalOptions ev;
  ev.checkpoint = dir / "seed0.checkpoint.json";
  ev.ids = {0, 1};
  const json a = cmd_eval(ev, ds);
  CHECK(a.at("problems").size() == 2);
  CHECK(cmd_eval(ev, ds) == a);
}

TEST_CASE("evaluation: untrained near chance, oracle perfect") {
  TempDir tmp("eval");
  cmd_generate(gen_options(tmp.path, 20, "mixed"));
  const Dataset ds = load_dataset(tmp.path);
  // A single untrained siamese net can lean either way on dissimilar pairs;
  // across initializations the greedy accuracy centres on the 50/50 labels.
  for (EncoderKind kind : {EncoderKind::Mlp, EncoderKind::Snn}) {
    PolicyConfig cfg;
    cfg.encoder = kind;
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const PolicyModel model(cfg, seed);
      sum += evaluate(&model, ds.problems, 144).at("accuracy").get<double>();
    }
    CHECK(std::abs(sum / 10 - 0.5) <= 0.05);
  }
  EvalOptions oracle;
  oracle.oracle = true;
  oracle.ids = {0, 5, 19};
  CHECK(cmd_eval(oracle, ds).at("accuracy").get<double>() == 1.0);
}

TEST_CASE("report aggregates runs into csv and svg") {
  TempDir tmp("report");
  write_run(tmp.path / "snn", {{70, 80, 90, 100}, {72, 82, 92, 102}});
  write_run(tmp.path / "mlp", {{70, 71, 72, 73}});
  ReportOptions opt;
  opt.run_dirs = {tmp.path / "snn", tmp.path / "mlp"};
  opt.out = tmp.path / "out" / "report";
  opt.window = 1;
  cmd_report(opt);
  const std::string svg = slurp(tmp.path / "out" / "report.svg");
  CHECK(count_substr(svg, "<polyline") == 2);
  CHECK(count_substr(svg, "class=\"baseline\"") == 1);
  const std::string csv = slurp(tmp.path / "out" / "report.csv");
  CHECK(csv.find("snn,3,101,1,101,1\n") != std::string::npos);
  CHECK(csv.find("mlp,2,72,0,72,0\n") != std::string::npos);

  const RunSeries single = load_run(tmp.path / "mlp");
  for (double s : single.std_dev) CHECK(s == 0.0);

  write_run(tmp.path / "short", {{70, 71}});
  opt.run_dirs.push_back(tmp.path / "short");
  CHECK_ERROR_CODE(cmd_report(opt), ErrorCode::InconsistentRuns);
  write_run(tmp.path / "ragged", {{70, 71, 72}, {70, 71}});
  CHECK_ERROR_CODE(load_run(tmp.path / "ragged"), ErrorCode::InconsistentRuns);
}

TEST_CASE("smoothing") {
  const std::vector<double> v{1, 2, 3, 4, 5};
  CHECK(smooth(v, 1) == v);
  const auto s = smooth(v, 2);
  CHECK(s == std::vector<double>{1, 1.5, 2.5, 3.5, 4.5});
  CHECK(smooth(v, 50).back() == doctest::Approx(3.0));
  CHECK_ERROR_CODE(smooth(v, 0), ErrorCode::ConfigError);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorCode::ConfigError) == kExitConfig);
  CHECK(exit_code_for(ErrorCode::MissingFile) == kExitData);
  CHECK(exit_code_for(ErrorCode::CheckpointVersionMismatch) == kExitData);
  const json bv = cmd_bounds_verify(0, 1);
  CHECK(bv.at("passed").get<bool>());
}
