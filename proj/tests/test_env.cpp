#include <algorithm>
#include <cmath>
#include <set>

#include "bongard/env.hpp"
#include "bongard/error.hpp"
#include "bongard/synth.hpp"
#include "test_util.hpp"

using namespace bongard;

namespace {

std::shared_ptr<const BongardProblem> problem(std::uint64_t seed, int id = 0) {
  SynthConfig c;
  c.seed = seed;
  return std::make_shared<const BongardProblem>(generate_bp(parse_concept("fill"), c, id));
}

}  // namespace

TEST_CASE("compile_pairs enumerates all ordered pairs row-major") {
  const auto bp = problem(1);
  const auto pairs = compile_pairs(*bp);
  REQUIRE(pairs.size() == 144);
  int same = 0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const LabeledPair& p = pairs[k];
    CHECK(p.i == static_cast<int>(k) / 12);
    CHECK(p.j == static_cast<int>(k) % 12);
    CHECK(p.same_group == ((p.i < 6) == (p.j < 6)));
    CHECK(p.state.first() == bp->image(p.i));
    CHECK(p.state.second() == bp->image(p.j));
    same += p.same_group;
  }
  CHECK(same == 72);
}

TEST_CASE("reset draws a seeded permutation and downsamples") {
  const auto bp = problem(2);
  EnvConfig cfg;
  const EpisodeState a = reset(bp, cfg, 11);
  const EpisodeState b = reset(bp, cfg, 11);
  const EpisodeState c = reset(bp, cfg, 12);
  CHECK(std::equal(a.order().begin(), a.order().end(), b.order().begin(), b.order().end()));
  CHECK_FALSE(std::equal(a.order().begin(), a.order().end(), c.order().begin(), c.order().end()));
  std::set<int> seen(a.order().begin(), a.order().end());
  CHECK(seen.size() == 144);
  CHECK(a.observation().width() == 16);
  CHECK(a.observation().first() == downsample(bp->image(a.current_pair().i), 16, 16));

  cfg.shuffle = false;
  const EpisodeState fixed = reset(bp, cfg, 99);
  for (int k = 0; k < 144; ++k) CHECK(fixed.order()[static_cast<std::size_t>(k)] == k);
}

TEST_CASE("step rewards correct answers and ends at T") {
  EnvConfig cfg;
  cfg.episode_length = 20;
  EpisodeState ep = reset(problem(3), cfg, 5);
  int expected_return = 0;
  for (int t = 0; t < 20; ++t) {
    CHECK_FALSE(ep.done());
    const bool same = ep.current_pair().same_group;
    const Action a = t % 3 == 0 ? Action::Same : Action::Different;
    const int expected = (a == Action::Same) == same ? 1 : 0;
    const StepResult r = ep.step(a);
    CHECK(r.reward == expected);
    CHECK(r.done == (t == 19));
    CHECK((r.next == nullptr) == r.done);
    expected_return += expected;
  }
  CHECK(ep.done());
  CHECK(raw_return(ep.history()) == expected_return);
  CHECK_ERROR_CODE(ep.step(Action::Same), ErrorCode::EpisodeFinished);
  CHECK_ERROR_CODE(ep.current_pair(), ErrorCode::EpisodeFinished);
}

TEST_CASE("class stats count the remaining pairs of each class") {
  EpisodeState ep = reset(problem(4), EnvConfig{}, 1);
  int same_left = 72, diff_left = 72;
  while (!ep.done()) {
    const HistoryClassStats s = ep.class_stats();
    CHECK(s.remaining_same == same_left);
    CHECK(s.remaining_diff == diff_left);
    (ep.current_pair().same_group ? same_left : diff_left) -= 1;
    ep.step(Action::Same);
  }
  CHECK(ep.class_stats().remaining_same == 0);
  CHECK(ep.class_stats().remaining_diff == 0);
}

TEST_CASE("discounted return") {
  std::vector<StepRecord> records{{0, Action::Same, 1}, {1, Action::Same, 0}, {2, Action::Same, 1}};
  CHECK(episode_return(records, 0.5) == doctest::Approx(1.0 + 0.25));
  CHECK(episode_return(records, 1.0) == doctest::Approx(2.0));
  CHECK(raw_return(records) == 2);
}

TEST_CASE("env config validation") {
  EnvConfig cfg;
  cfg.episode_length = 145;
  CHECK_ERROR_CODE(validate(cfg), ErrorCode::ConfigError);
  cfg.episode_length = 0;
  CHECK_ERROR_CODE(validate(cfg), ErrorCode::ConfigError);
  cfg = EnvConfig{};
  cfg.gamma = 1.5;
  CHECK_ERROR_CODE(validate(cfg), ErrorCode::ConfigError);
  cfg = EnvConfig{};
  cfg.image_side = 64;
  CHECK_ERROR_CODE(reset(problem(5), cfg, 0), ErrorCode::InvalidTarget);
}
