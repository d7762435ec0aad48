#include "bongard/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "bongard/kernels.hpp"

#ifndef BONGARD_VERSION
#define BONGARD_VERSION "unknown"
#endif

namespace bongard::harness {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidTarget:
    case ErrorCode::UnsatisfiableConcept:
    case ErrorCode::InconsistentRuns:
      return kExitConfig;
    default:
      return kExitData;
  }
}

std::string version() { return BONGARD_VERSION; }

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedFormat, path.string() + ": " + e.what());
  }
}

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

std::string problem_dir_name(int id) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d", id);
  return buf;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Datasets

const std::vector<std::string> kMixedConcepts = {
    "fill:filled",   "fill:outline",  "numerosity:1",   "numerosity:2",     "numerosity:>=3",
    "shape:circle",  "shape:square",  "shape:triangle", "shape:!triangle",  "size:large",
    "size:small",    "enclosure",     "enclosure:absent",
};

json cmd_generate(const GenerateOptions& options) {
  if (options.count < 0) throw Error(ErrorCode::ConfigError, "count must be non-negative");
  validate(options.synth);
  make_dirs(options.out_dir);
  json problems = json::array();
  for (int id = 0; id < options.count; ++id) {
    const std::string& text = options.concept_spec == "mixed"
                                  ? kMixedConcepts[static_cast<std::size_t>(id) % kMixedConcepts.size()]
                                  : options.concept_spec;
    const Concept rule = parse_concept(text, options.synth.canvas_w, options.synth.canvas_h);
    SynthConfig synth = options.synth;
    synth.seed = derive_seed(options.seed, static_cast<std::uint64_t>(id));
    const BongardProblem bp = generate_bp(rule, synth, id);
    const fs::path dir = options.out_dir / problem_dir_name(id);
    save_bp(bp, dir);
    write_text(dir / "concept.json", concept_sidecar(bp).dump(2) + "\n");
    problems.push_back({{"id", id}, {"dir", problem_dir_name(id)}, {"concept", concept_to_string(rule)}, {"k", rule.k()}});
  }
  json manifest{{"seed", options.seed},
                {"concept", options.concept_spec},
                {"canvas", {options.synth.canvas_w, options.synth.canvas_h}},
                {"leading_pairs", options.synth.leading_pairs},
                {"count", options.count},
                {"problems", problems}};
  write_text(options.out_dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

std::shared_ptr<const BongardProblem> Dataset::find(int id) const {
  for (const auto& bp : problems) {
    if (bp->id() == id) return bp;
  }
  throw Error(ErrorCode::MissingFile, "problem " + std::to_string(id) + " not in dataset " + root.string());
}

std::vector<std::shared_ptr<const BongardProblem>> Dataset::select(const std::vector<int>& ids) const {
  std::vector<std::shared_ptr<const BongardProblem>> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(find(id));
  return out;
}

Dataset load_dataset(const fs::path& root) {
  const json manifest = read_json(root / "manifest.json");
  Dataset ds;
  ds.root = root;
  try {
    for (const json& entry : manifest.at("problems")) {
      const int id = entry.at("id").get<int>();
      const fs::path dir = root / entry.at("dir").get<std::string>();
      BongardProblem loaded = load_bp(dir);
      std::optional<Concept> rule;
      std::vector<SceneDescription> scenes;
      if (fs::exists(dir / "concept.json")) {
        const json sidecar = read_json(dir / "concept.json");
        rule = concept_from_json(sidecar);
        for (const json& s : sidecar.at("scenes")) scenes.push_back(scene_from_json(s));
      }
      ds.problems.push_back(
          std::make_shared<const BongardProblem>(id, loaded.left(), loaded.right(), std::move(rule), std::move(scenes)));
      ds.concept_keys.push_back(entry.value("concept", std::string{}));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedFormat, "manifest: " + std::string(e.what()));
  }
  return ds;
}

std::pair<std::vector<int>, std::vector<int>> default_split(const Dataset& dataset) {
  std::vector<std::string> keys;
  for (const std::string& k : dataset.concept_keys) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }
  std::set<std::string> held_out;
  if (keys.size() > 1) {
    for (std::size_t i = 1; i < keys.size(); i += 5) held_out.insert(keys[i]);
  }
  std::pair<std::vector<int>, std::vector<int>> split;
  for (std::size_t i = 0; i < dataset.problems.size(); ++i) {
    (held_out.count(dataset.concept_keys[i]) ? split.second : split.first).push_back(dataset.problems[i]->id());
  }
  return split;
}

// ---------------------------------------------------------------------------
// Run configuration

void validate(const RunConfig& config) {
  if (config.seeds.empty()) throw Error(ErrorCode::ConfigError, "at least one seed is required");
  if (config.name.empty()) throw Error(ErrorCode::ConfigError, "run name is empty");
  for (int id : config.train_ids) {
    if (std::find(config.eval_ids.begin(), config.eval_ids.end(), id) != config.eval_ids.end()) {
      throw Error(ErrorCode::ConfigError, "problem " + std::to_string(id) + " is in both train and eval");
    }
  }
  validate(config.training.env);
  validate(config.training.learner);
  if (config.training.episodes < 0) throw Error(ErrorCode::ConfigError, "episodes must be non-negative");
}

json to_json(const RunConfig& c) {
  const TrainingOptions& t = c.training;
  const LearnerConfig& l = t.learner;
  return json{
      {"name", c.name},
      {"algorithm", std::string(to_string(l.algorithm))},
      {"encoder", std::string(to_string(t.policy.encoder))},
      {"bounds_mode", std::string(to_string(l.bounds_mode))},
      {"episode_length", t.env.episode_length},
      {"episodes", t.episodes},
      {"gamma", t.env.gamma},
      {"image_side", t.env.image_side},
      {"shuffle", t.env.shuffle},
      {"seeds", c.seeds},
      {"train_ids", c.train_ids},
      {"eval_ids", c.eval_ids},
      {"data", c.data_dir.string()},
      {"out", c.out_dir.string()},
      {"min_samples", t.min_samples},
      {"swap_history_in_lower", t.extended.swap_history_in_lower},
      {"feature_dim", t.policy.feature_dim},
      {"hidden_dim", t.policy.hidden_dim},
      {"learner",
       {{"clip_epsilon", l.clip_epsilon},
        {"epochs", l.epochs},
        {"entropy_coef", l.entropy_coef},
        {"value_coef", l.value_coef},
        {"learning_rate", l.learning_rate},
        {"minibatch_size", l.minibatch_size},
        {"episodes_per_batch", l.episodes_per_batch}}},
  };
}

RunConfig apply_json(RunConfig c, const json& j) {
  try {
    TrainingOptions& t = c.training;
    LearnerConfig& l = t.learner;
    if (j.contains("name")) c.name = j.at("name").get<std::string>();
    if (j.contains("algorithm")) l.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
    if (j.contains("encoder")) t.policy.encoder = encoder_from_string(j.at("encoder").get<std::string>());
    if (j.contains("bounds_mode")) l.bounds_mode = bounds_mode_from_string(j.at("bounds_mode").get<std::string>());
    if (j.contains("episode_length")) t.env.episode_length = j.at("episode_length").get<int>();
    if (j.contains("episodes")) t.episodes = j.at("episodes").get<int>();
    if (j.contains("gamma")) t.env.gamma = j.at("gamma").get<double>();
    if (j.contains("image_side")) t.env.image_side = j.at("image_side").get<int>();
    if (j.contains("shuffle")) t.env.shuffle = j.at("shuffle").get<bool>();
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("train_ids")) c.train_ids = j.at("train_ids").get<std::vector<int>>();
    if (j.contains("eval_ids")) c.eval_ids = j.at("eval_ids").get<std::vector<int>>();
    if (j.contains("data")) c.data_dir = j.at("data").get<std::string>();
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    if (j.contains("workers")) c.workers = j.at("workers").get<int>();
    if (j.contains("min_samples")) t.min_samples = j.at("min_samples").get<std::uint64_t>();
    if (j.contains("swap_history_in_lower")) t.extended.swap_history_in_lower = j.at("swap_history_in_lower").get<bool>();
    if (j.contains("feature_dim")) t.policy.feature_dim = j.at("feature_dim").get<int>();
    if (j.contains("hidden_dim")) t.policy.hidden_dim = j.at("hidden_dim").get<int>();
    if (j.contains("learner")) {
      const json& lj = j.at("learner");
      if (lj.contains("clip_epsilon")) l.clip_epsilon = lj.at("clip_epsilon").get<double>();
      if (lj.contains("epochs")) l.epochs = lj.at("epochs").get<int>();
      if (lj.contains("entropy_coef")) l.entropy_coef = lj.at("entropy_coef").get<double>();
      if (lj.contains("value_coef")) l.value_coef = lj.at("value_coef").get<double>();
      if (lj.contains("learning_rate")) l.learning_rate = lj.at("learning_rate").get<double>();
      if (lj.contains("minibatch_size")) l.minibatch_size = lj.at("minibatch_size").get<int>();
      if (lj.contains("episodes_per_batch")) l.episodes_per_batch = lj.at("episodes_per_batch").get<int>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("config: ") + e.what());
  }
  return c;
}

fs::path default_data_root() {
  const char* env = std::getenv("BONGARD_DATA");
  return env != nullptr && *env != '\0' ? fs::path(env) : fs::path("data");
}

// ---------------------------------------------------------------------------
// Training

std::string csv_row(std::uint64_t seed, const EpisodeMetrics& m) {
  std::string row = std::to_string(seed);
  row += ',' + std::to_string(m.episode);
  row += ',' + std::to_string(m.steps);
  row += ',' + std::to_string(m.raw_return);
  row += ',' + format_double(m.discounted_return);
  row += ',' + format_double(m.policy_loss);
  row += ',' + format_double(m.value_loss);
  row += ',' + format_double(m.entropy);
  row += m.bounds_active ? ",1" : ",0";
  return row;
}

namespace {

SeedOutcome train_seed(const RunConfig& config, const std::vector<std::shared_ptr<const BongardProblem>>& problems,
                       std::uint64_t seed) {
  SeedOutcome outcome;
  outcome.seed = seed;
  const fs::path dir = config.out_dir / config.name;
  const std::string stem = "seed" + std::to_string(seed);
  outcome.csv = dir / (stem + ".csv");
  const auto started = std::chrono::steady_clock::now();

  std::ofstream csv(outcome.csv, std::ios::binary | std::ios::trunc);
  if (!csv) throw Error(ErrorCode::IoError, "cannot write " + outcome.csv.string());
  csv << "# schema=1\n" << kCsvHeader << '\n';
  csv.flush();

  double tail_sum = 0.0;
  int tail_count = 0;
  const int tail_from = config.training.episodes - 100;
  TrainingResult result = train(config.training, problems, seed, [&](std::span<const EpisodeMetrics> rows) {
    for (const EpisodeMetrics& m : rows) {
      csv << csv_row(seed, m) << '\n';
      if (m.episode >= tail_from) {
        tail_sum += m.raw_return;
        ++tail_count;
      }
    }
    csv.flush();
  });
  if (!csv) throw Error(ErrorCode::IoError, "write failed for " + outcome.csv.string());

  write_text(dir / (stem + ".checkpoint.json"), checkpoint_to_json(result.state).dump() + "\n");
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::int64_t total_steps = 0;
  for (const EpisodeMetrics& m : result.metrics) total_steps += m.steps;
  const json meta{{"config", to_json(config)},
                  {"seed", seed},
                  {"version", version()},
                  {"kernels", std::string(kernels::active().name)},
                  {"episodes", result.metrics.size()},
                  {"total_steps", total_steps},
                  {"wall_time_s", wall}};
  write_text(dir / (stem + ".meta.json"), meta.dump(2) + "\n");
  outcome.final_mean_return = tail_count > 0 ? tail_sum / tail_count : 0.0;
  outcome.ok = true;
  return outcome;
}

}  // namespace

std::vector<SeedOutcome> cmd_train(const RunConfig& config, const Dataset& dataset) {
  validate(config);
  std::vector<int> ids = config.train_ids;
  if (ids.empty()) ids = default_split(dataset).first;
  const auto problems = dataset.select(ids);
  if (problems.empty()) throw Error(ErrorCode::ConfigError, "no training problems selected");
  make_dirs(config.out_dir / config.name);

  std::vector<SeedOutcome> outcomes(config.seeds.size());
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      std::size_t k = 0;
      {
        std::lock_guard lock(mu);
        if (next >= config.seeds.size()) return;
        k = next++;
      }
      try {
        outcomes[k] = train_seed(config, problems, config.seeds[k]);
      } catch (const std::exception& e) {
        outcomes[k].seed = config.seeds[k];
        outcomes[k].error = e.what();
      }
    }
  };
  int workers = config.workers > 0 ? config.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(config.seeds.size()));
  std::vector<std::thread> threads;
  for (int w = 1; w < workers; ++w) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  return outcomes;
}

namespace {

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

CsvTable read_metrics_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MissingFile, path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line) || line != "# schema=1") {
    throw Error(ErrorCode::MalformedFormat, path.string() + ": missing '# schema=1' header");
  }
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedFormat, path.string() + ": missing column header");
  t.columns = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != t.columns.size()) throw Error(ErrorCode::MalformedFormat, path.string() + ": ragged row");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

std::vector<double> column(const CsvTable& t, const std::string& name, const fs::path& path) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  if (it == t.columns.end()) throw Error(ErrorCode::MalformedFormat, path.string() + ": no column " + name);
  const auto idx = static_cast<std::size_t>(it - t.columns.begin());
  std::vector<double> out;
  out.reserve(t.rows.size());
  try {
    for (const auto& row : t.rows) out.push_back(std::stod(row[idx]));
  } catch (const std::exception&) {
    throw Error(ErrorCode::MalformedFormat, path.string() + ": bad number in column " + name);
  }
  return out;
}

}  // namespace

double final_mean_return(const fs::path& csv, int window) {
  const std::vector<double> returns = column(read_metrics_csv(csv), "return", csv);
  if (returns.empty()) return 0.0;
  const std::size_t n = std::min(returns.size(), static_cast<std::size_t>(std::max(window, 1)));
  double sum = 0.0;
  for (std::size_t i = returns.size() - n; i < returns.size(); ++i) sum += returns[i];
  return sum / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Evaluation

json evaluate(const PolicyModel* model, std::span<const std::shared_ptr<const BongardProblem>> problems,
              int episode_length) {
  EnvConfig env;
  env.episode_length = episode_length;
  env.shuffle = false;
  if (model != nullptr) env.image_side = model->config.image_side;
  validate(env);

  json per_problem = json::array();
  std::int64_t correct = 0;
  std::int64_t total = 0;
  double return_sum = 0.0;
  for (const auto& bp : problems) {
    EpisodeState ep = reset(bp, env, 0);
    while (!ep.done()) {
      const LabeledPair& pair = ep.current_pair();
      const Action a = model != nullptr ? greedy_action(*model, pair.state)
                                        : (pair.same_group ? Action::Same : Action::Different);
      ep.step(a);
    }
    const int ret = raw_return(ep.history());
    const int steps = static_cast<int>(ep.history().size());
    correct += ret;
    total += steps;
    return_sum += ret;
    per_problem.push_back({{"id", bp->id()},
                           {"return", ret},
                           {"accuracy", steps > 0 ? static_cast<double>(ret) / steps : 0.0}});
  }
  const double n = problems.empty() ? 1.0 : static_cast<double>(problems.size());
  return json{{"problems", per_problem},
              {"mean_return", return_sum / n},
              {"accuracy", total > 0 ? static_cast<double>(correct) / static_cast<double>(total) : 0.0},
              {"episode_length", episode_length},
              {"mode", model != nullptr ? "greedy" : "oracle"}};
}

json cmd_eval(const EvalOptions& options, const Dataset& dataset) {
  std::vector<int> ids = options.ids;
  if (ids.empty()) ids = default_split(dataset).second;
  if (ids.empty()) {
    for (const auto& bp : dataset.problems) ids.push_back(bp->id());
  }
  const auto problems = dataset.select(ids);
  if (options.oracle) return evaluate(nullptr, problems, options.episode_length);
  if (!options.checkpoint) throw Error(ErrorCode::ConfigError, "eval needs --checkpoint or --oracle");
  const TrainState state = checkpoint_from_json(read_json(*options.checkpoint));
  return evaluate(&state.model, problems, options.episode_length);
}

json cmd_bounds_verify(std::uint64_t trials, std::uint64_t seed) {
  json j = verify_bounds(trials, seed).to_json();
  j["seed"] = seed;
  return j;
}

// ---------------------------------------------------------------------------
// Reporting

RunSeries load_run(const fs::path& run_dir) {
  std::vector<fs::path> csvs;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(run_dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.rfind("seed", 0) == 0 && entry.path().extension() == ".csv") {
      csvs.push_back(entry.path());
    }
  }
  if (ec) throw Error(ErrorCode::MissingFile, run_dir.string());
  if (csvs.empty()) throw Error(ErrorCode::MissingFile, run_dir.string() + ": no seed CSVs");
  std::sort(csvs.begin(), csvs.end());

  std::vector<std::vector<double>> returns;
  for (const fs::path& p : csvs) {
    returns.push_back(column(read_metrics_csv(p), "return", p));
    if (returns.back().size() != returns.front().size()) {
      throw Error(ErrorCode::InconsistentRuns, run_dir.string() + ": seeds disagree on episode count");
    }
  }
  RunSeries s;
  s.name = run_dir.filename().empty() ? run_dir.parent_path().filename().string() : run_dir.filename().string();
  s.seeds = static_cast<int>(returns.size());
  const std::size_t n = returns.front().size();
  s.mean.resize(n);
  s.std_dev.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    double sum = 0.0;
    for (const auto& r : returns) sum += r[e];
    const double mean = sum / static_cast<double>(returns.size());
    double var = 0.0;
    for (const auto& r : returns) var += (r[e] - mean) * (r[e] - mean);
    s.mean[e] = mean;
    s.std_dev[e] = std::sqrt(var / static_cast<double>(returns.size()));
  }
  return s;
}

std::vector<double> smooth(std::span<const double> values, int window) {
  if (window < 1) throw Error(ErrorCode::ConfigError, "smoothing window must be >= 1");
  std::vector<double> out(values.size());
  double running = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    running += values[i];
    if (i >= static_cast<std::size_t>(window)) running -= values[i - static_cast<std::size_t>(window)];
    const std::size_t count = std::min(i + 1, static_cast<std::size_t>(window));
    out[i] = window == 1 ? values[i] : running / static_cast<double>(count);
  }
  return out;
}

std::string render_svg(const std::vector<RunSeries>& runs, int window, double baseline) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  constexpr double kW = 720, kH = 400, kLeft = 60, kRight = 20, kTop = 20, kBottom = 40;
  std::size_t episodes = 0;
  double y_max = baseline * 2.0;
  for (const RunSeries& r : runs) {
    episodes = std::max(episodes, r.mean.size());
    for (double v : r.mean) y_max = std::max(y_max, v);
  }
  if (!(y_max > 0.0)) y_max = 1.0;
  const double x_span = episodes > 1 ? static_cast<double>(episodes - 1) : 1.0;
  auto px = [&](double e) { return kLeft + (kW - kLeft - kRight) * e / x_span; };
  auto py = [&](double v) { return kTop + (kH - kTop - kBottom) * (1.0 - v / y_max); };
  char buf[128];

  std::string svg;
  std::snprintf(buf, sizeof buf, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\">\n", kW, kH);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<line class=\"axis\" x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", kLeft,
                kH - kBottom, kW - kRight, kH - kBottom);
  svg += buf;
  std::snprintf(buf, sizeof buf, "<line class=\"axis\" x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", kLeft,
                kTop, kLeft, kH - kBottom);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<line class=\"baseline\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"gray\" "
                "stroke-dasharray=\"6 4\"/>\n",
                kLeft, py(baseline), kW - kRight, py(baseline));
  svg += buf;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const std::vector<double> line = smooth(runs[k].mean, window);
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += kColors[k % std::size(kColors)];
    svg += "\" points=\"";
    for (std::size_t e = 0; e < line.size(); ++e) {
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", e == 0 ? "" : " ", px(static_cast<double>(e)), py(line[e]));
      svg += buf;
    }
    svg += "\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"12\" fill=\"%s\">", kLeft + 10,
                  kTop + 14 * static_cast<double>(k + 1), kColors[k % std::size(kColors)]);
    svg += buf;
    svg += runs[k].name + "</text>\n";
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"12\">episode (0..%zu)</text>\n", kW / 2,
                kH - 10, episodes);
  svg += buf;
  svg += "</svg>\n";
  return svg;
}

void cmd_report(const ReportOptions& options) {
  if (options.run_dirs.empty()) throw Error(ErrorCode::ConfigError, "report needs at least one run directory");
  std::vector<RunSeries> runs;
  for (const fs::path& dir : options.run_dirs) runs.push_back(load_run(dir));
  for (const RunSeries& r : runs) {
    if (r.mean.size() != runs.front().mean.size()) {
      throw Error(ErrorCode::InconsistentRuns, "runs disagree on episode count");
    }
  }
  const double baseline = options.baseline ? *options.baseline : [&] {
    // The first meta file found records the episode length.
    for (const fs::path& dir : options.run_dirs) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.size() > 10 && name.ends_with(".meta.json")) {
          return read_json(entry.path()).at("config").at("episode_length").get<int>() / 2.0;
        }
      }
    }
    return kPairsPerProblem / 2.0;
  }();

  std::string csv = "run,episode,mean,std,smoothed_mean,smoothed_std\n";
  for (const RunSeries& r : runs) {
    const auto sm = smooth(r.mean, options.window);
    const auto ss = smooth(r.std_dev, options.window);
    for (std::size_t e = 0; e < r.mean.size(); ++e) {
      csv += r.name + ',' + std::to_string(e) + ',' + format_double(r.mean[e]) + ',' + format_double(r.std_dev[e]) +
             ',' + format_double(sm[e]) + ',' + format_double(ss[e]) + '\n';
    }
  }
  if (options.out.has_parent_path()) make_dirs(options.out.parent_path());
  write_text(fs::path(options.out).concat(".csv"), csv);
  write_text(fs::path(options.out).concat(".svg"), render_svg(runs, options.window, baseline));
}

}  // namespace bongard::harness
