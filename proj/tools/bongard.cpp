// bongard: dataset generation, training, evaluation, bound verification and
// reporting for the Bongard decision process.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bongard/harness.hpp"

namespace fs = std::filesystem;
using namespace bongard;
using nlohmann::json;

namespace {

json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read config " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, path + ": " + e.what());
  }
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + out);
  f << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bongard problems as a contextual bandit"};
  app.set_version_flag("--version", harness::version());
  app.require_subcommand(1);

  // generate
  harness::GenerateOptions gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset");
  generate->add_option("--concept", gen.concept_spec, "Concept, e.g. fill, shape:triangle, numerosity:>=2, or mixed");
  generate->add_option("--count", gen.count, "Number of problems")->check(CLI::NonNegativeNumber);
  generate->add_option("--seed", gen.seed, "Generator seed");
  generate->add_option("--out", gen_out, "Output directory (default $BONGARD_DATA or ./data)");
  generate->add_option("--canvas", gen.synth.canvas_w, "Canvas side in pixels")->check(CLI::Range(16, 4096));
  generate->add_option("--max-shapes", gen.synth.max_shapes, "Shapes per image, at most")->check(CLI::PositiveNumber);
  generate->add_flag("--leading-pairs", gen.synth.leading_pairs, "Derive right images as minimal counterparts");

  // train
  std::string config_path;
  std::string algo, model, bounds, data, out, name;
  int episodes = 0, seeds = 0, episode_length = 0, image_side = 0, workers = 0, batch = 0, epochs = 0;
  double gamma = 0, lr = 0, entropy = 0;
  std::uint64_t seed = 0, min_samples = 0;
  std::vector<int> train_ids, eval_ids;
  bool swap_history = false;
  auto* train = app.add_subcommand("train", "Train agents over several seeds");
  train->add_option("--config", config_path, "JSON run config; flags override it");
  train->add_option("--algo", algo, "ppo|a2c");
  train->add_option("--model", model, "snn|mlp");
  train->add_option("--bounds", bounds, "off|base|extended");
  train->add_option("--episodes", episodes, "Episodes per seed");
  train->add_option("--seeds", seeds, "Number of seeds, starting at --seed");
  train->add_option("--seed", seed, "First seed");
  train->add_option("--episode-length", episode_length, "Steps per episode (T)");
  train->add_option("--image-side", image_side, "Downsampled image side");
  train->add_option("--gamma", gamma, "Discount factor");
  train->add_option("--lr", lr, "Adam learning rate");
  train->add_option("--entropy", entropy, "Entropy coefficient");
  train->add_option("--batch", batch, "Episodes per update");
  train->add_option("--epochs", epochs, "PPO epochs per update");
  train->add_option("--min-samples", min_samples, "Pooled samples required before bounds apply");
  train->add_flag("--swap-history-in-lower", swap_history, "Use p(z|H) in the extended lower bound");
  train->add_option("--train-ids", train_ids, "Problem ids to train on (default: concept split)");
  train->add_option("--eval-ids", eval_ids, "Problem ids held out");
  train->add_option("--data", data, "Dataset root (default $BONGARD_DATA or ./data)");
  train->add_option("--out", out, "Runs directory");
  train->add_option("--name", name, "Run name");
  train->add_option("--workers", workers, "Parallel seeds (0 = hardware)");

  // eval
  harness::EvalOptions ev;
  std::string ev_checkpoint, ev_data, ev_out;
  auto* eval = app.add_subcommand("eval", "Greedy evaluation of a checkpoint");
  eval->add_option("--checkpoint", ev_checkpoint, "Checkpoint JSON");
  eval->add_flag("--oracle", ev.oracle, "Answer from the true labels");
  eval->add_option("--ids", ev.ids, "Problem ids (default: eval split)");
  eval->add_option("--episode-length", ev.episode_length, "Steps per problem");
  eval->add_option("--data", ev_data, "Dataset root");
  eval->add_option("--out", ev_out, "Write the JSON here instead of stdout");

  // bounds-verify
  std::uint64_t trials = 10000, bv_seed = 0;
  std::string bv_out;
  auto* verify = app.add_subcommand("bounds-verify", "Monte-Carlo check of the causal bounds");
  verify->add_option("--trials", trials, "Random models and joints to test");
  verify->add_option("--seed", bv_seed, "Sampling seed");
  verify->add_option("--out", bv_out, "Write the JSON here instead of stdout");

  // report
  harness::ReportOptions rep;
  std::vector<std::string> run_dirs;
  std::string rep_out = "report";
  double baseline = 0;
  auto* report = app.add_subcommand("report", "Summarise runs as CSV and SVG");
  report->add_option("runs", run_dirs, "Run directories")->required();
  report->add_option("--out", rep_out, "Output prefix (writes .csv and .svg)");
  report->add_option("--window", rep.window, "Smoothing window")->check(CLI::PositiveNumber);
  report->add_option("--baseline", baseline, "Baseline return (default T/2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? harness::kExitOk : harness::kExitConfig;
  }

  try {
    if (*generate) {
      gen.synth.canvas_h = gen.synth.canvas_w;
      gen.out_dir = gen_out.empty() ? harness::default_data_root() : fs::path(gen_out);
      const json manifest = harness::cmd_generate(gen);
      std::cerr << "wrote " << manifest.at("count").get<int>() << " problems to " << gen.out_dir.string() << '\n';
      return harness::kExitOk;
    }

    if (*train) {
      harness::RunConfig cfg;
      cfg.data_dir = harness::default_data_root();
      if (!config_path.empty()) cfg = harness::apply_json(cfg, read_config(config_path));
      auto set = [&](const char* flag) { return train->count(flag) > 0; };
      TrainingOptions& t = cfg.training;
      if (set("--algo")) t.learner.algorithm = algorithm_from_string(algo);
      if (set("--model")) t.policy.encoder = encoder_from_string(model);
      if (set("--bounds")) t.learner.bounds_mode = bounds_mode_from_string(bounds);
      if (set("--episodes")) t.episodes = episodes;
      if (set("--episode-length")) t.env.episode_length = episode_length;
      if (set("--image-side")) t.env.image_side = image_side;
      if (set("--gamma")) t.env.gamma = gamma;
      if (set("--lr")) t.learner.learning_rate = lr;
      if (set("--entropy")) t.learner.entropy_coef = entropy;
      if (set("--batch")) t.learner.episodes_per_batch = batch;
      if (set("--epochs")) t.learner.epochs = epochs;
      if (set("--min-samples")) t.min_samples = min_samples;
      if (set("--swap-history-in-lower")) t.extended.swap_history_in_lower = swap_history;
      if (set("--train-ids")) cfg.train_ids = train_ids;
      if (set("--eval-ids")) cfg.eval_ids = eval_ids;
      if (set("--data")) cfg.data_dir = data;
      if (set("--out")) cfg.out_dir = out;
      if (set("--name")) cfg.name = name;
      if (set("--workers")) cfg.workers = workers;
      if (set("--seeds") || set("--seed")) {
        const std::uint64_t first = set("--seed") ? seed : (cfg.seeds.empty() ? 0 : cfg.seeds.front());
        const std::size_t n = set("--seeds") ? static_cast<std::size_t>(std::max(seeds, 0)) : cfg.seeds.size();
        cfg.seeds.clear();
        for (std::size_t k = 0; k < n; ++k) cfg.seeds.push_back(first + k);
      }
      const harness::Dataset dataset = harness::load_dataset(cfg.data_dir);
      const auto outcomes = harness::cmd_train(cfg, dataset);
      bool ok = true;
      for (const auto& o : outcomes) {
        if (o.ok) {
          std::printf("seed %llu: final-100 mean return %.2f (%s)\n", static_cast<unsigned long long>(o.seed),
                      o.final_mean_return, o.csv.string().c_str());
        } else {
          std::printf("seed %llu: FAILED: %s\n", static_cast<unsigned long long>(o.seed), o.error.c_str());
          ok = false;
        }
      }
      return ok ? harness::kExitOk : harness::kExitData;
    }

    if (*eval) {
      if (!ev_checkpoint.empty()) ev.checkpoint = ev_checkpoint;
      const harness::Dataset dataset =
          harness::load_dataset(ev_data.empty() ? harness::default_data_root() : fs::path(ev_data));
      emit(harness::cmd_eval(ev, dataset), ev_out);
      return harness::kExitOk;
    }

    if (*verify) {
      const json j = harness::cmd_bounds_verify(trials, bv_seed);
      emit(j, bv_out);
      return j.at("passed").get<bool>() ? harness::kExitOk : harness::kExitAcceptance;
    }

    if (*report) {
      for (const auto& d : run_dirs) rep.run_dirs.emplace_back(d);
      rep.out = rep_out;
      if (report->count("--baseline") > 0) rep.baseline = baseline;
      harness::cmd_report(rep);
      return harness::kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return harness::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return harness::kExitData;
  }
  return harness::kExitOk;
}
