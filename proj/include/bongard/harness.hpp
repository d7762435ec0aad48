#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bongard/agents.hpp"
#include "bongard/error.hpp"
#include "bongard/synth.hpp"
#include "json.hpp"

namespace bongard::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitAcceptance = 3;

/// Maps a library error onto the CLI exit codes.
int exit_code_for(ErrorCode code);

/// Version string baked in at configure time (git describe), or "unknown".
std::string version();

// ---------------------------------------------------------------------------
// Datasets

struct GenerateOptions {
  /// A concept in parse_concept syntax, or "mixed" to cycle through kMixedConcepts.
  std::string concept_spec = "fill";
  int count = 20;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "data";
  SynthConfig synth;
};

/// Single-factor concepts in several parameterizations.
extern const std::vector<std::string> kMixedConcepts;

/// Writes `<out>/<id>/NN.pbm`, `<out>/<id>/concept.json` and `<out>/manifest.json`.
nlohmann::json cmd_generate(const GenerateOptions& options);

struct Dataset {
  std::filesystem::path root;
  std::vector<std::shared_ptr<const BongardProblem>> problems;
  /// Concept key per problem, in the same order.
  std::vector<std::string> concept_keys;

  std::shared_ptr<const BongardProblem> find(int id) const;
  std::vector<std::shared_ptr<const BongardProblem>> select(const std::vector<int>& ids) const;
};

/// Loads every problem listed in `<root>/manifest.json`, attaching the
/// concept from its sidecar when present.
Dataset load_dataset(const std::filesystem::path& root);

/// Partitions problem ids by concept key: every fifth key (in order of first
/// appearance, starting with the second) goes to eval. A dataset with a single
/// key is all train.
std::pair<std::vector<int>, std::vector<int>> default_split(const Dataset& dataset);

// ---------------------------------------------------------------------------
// Training

struct RunConfig {
  std::string name = "run";
  TrainingOptions training;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::vector<int> train_ids;
  std::vector<int> eval_ids;
  std::filesystem::path data_dir;
  std::filesystem::path out_dir = "runs";
  /// Parallel seed workers; 0 picks the hardware concurrency.
  int workers = 0;
};

/// Throws ConfigError for empty seeds, overlapping splits and invalid nested configs.
void validate(const RunConfig& config);
nlohmann::json to_json(const RunConfig& config);
/// Overlays the keys present in `j` onto `base`.
RunConfig apply_json(RunConfig base, const nlohmann::json& j);

/// Default data root: $BONGARD_DATA, else "data".
std::filesystem::path default_data_root();

inline constexpr std::string_view kCsvHeader =
    "seed,episode,steps,return,discounted_return,policy_loss,value_loss,entropy,bounds_active";

std::string csv_row(std::uint64_t seed, const EpisodeMetrics& m);

struct SeedOutcome {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double final_mean_return = 0.0;
  std::filesystem::path csv;
};

/// Trains every seed into `<out>/<name>/seed<k>.csv`, `seed<k>.checkpoint.json`
/// and `seed<k>.meta.json`.
std::vector<SeedOutcome> cmd_train(const RunConfig& config, const Dataset& dataset);

/// Mean raw return over the last `window` episodes of a metrics CSV.
double final_mean_return(const std::filesystem::path& csv, int window = 100);

// ---------------------------------------------------------------------------
// Evaluation and reporting

struct EvalOptions {
  std::optional<std::filesystem::path> checkpoint;
  /// Answer from the true labels instead of a model.
  bool oracle = false;
  std::vector<int> ids;
  int episode_length = kPairsPerProblem;
};

nlohmann::json cmd_eval(const EvalOptions& options, const Dataset& dataset);
nlohmann::json evaluate(const PolicyModel* model, std::span<const std::shared_ptr<const BongardProblem>> problems,
                        int episode_length);

nlohmann::json cmd_bounds_verify(std::uint64_t trials, std::uint64_t seed);

struct ReportOptions {
  std::vector<std::filesystem::path> run_dirs;
  std::filesystem::path out = "report";
  int window = 50;
  /// Horizontal reference line; defaults to T/2 of the runs.
  std::optional<double> baseline;
};

struct RunSeries {
  std::string name;
  std::vector<double> mean;
  std::vector<double> std_dev;
  int seeds = 0;
};

/// Per-episode mean and population std of raw return across the seed CSVs.
RunSeries load_run(const std::filesystem::path& run_dir);
/// Trailing moving average; window 1 is the identity.
std::vector<double> smooth(std::span<const double> values, int window);
std::string render_svg(const std::vector<RunSeries>& runs, int window, double baseline);

/// Writes `<out>.csv` and `<out>.svg`. Throws InconsistentRuns when the runs
/// (or the seeds of one run) disagree on episode count.
void cmd_report(const ReportOptions& options);

}  // namespace bongard::harness
