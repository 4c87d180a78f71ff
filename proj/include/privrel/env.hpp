#ifndef PRIVREL_ENV_HPP_
#define PRIVREL_ENV_HPP_

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "privrel/belief.hpp"
#include "privrel/model.hpp"
#include "privrel/policy.hpp"
#include "privrel/reward.hpp"

namespace privrel {

struct EnvConfig {
  double ls = 0.8;
  RewardKind reward_kind = RewardKind::kBeliefReward;
  InfoEstimator info_estimator = InfoEstimator::kKlDivergence;
  int max_steps = 5000;
  std::uint64_t seed = 0;

  bool valid() const { return ls > 0.0 && ls <= 1.0 && max_steps >= 1; }
};

// One environment transition. `done` is set when the episode ends with this
// transition, either because the updated belief crossed the threshold or
// because the step budget ran out.
struct ExperienceTuple {
  State state;
  std::vector<double> action_probs;
  int action = -1;
  double reward = 0.0;
  int observation = -1;
  State next_state;
  bool done = false;
};

struct EpisodeLog {
  int true_secret = -1;
  int true_useful = -1;
  std::vector<ExperienceTuple> steps;
  int decision_time = -1;  // tau; -1 when truncated
  Belief terminal_belief;  // belief at tau, or the last belief when truncated
  bool truncated = false;
  double total_reward = 0.0;
};

// The episodic belief-MDP. Hidden truths are sampled from the prior at
// reset and drive the observation draws; policies only ever see the State.
// Each episode uses its own seed stream derived from (seed, episode index),
// so runs are reproducible regardless of scheduling.
class Environment {
 public:
  Environment(const ObservationModel& model, EnvConfig cfg);

  // Starts the next sequential episode (stream index auto-increments).
  const State& reset();
  // Starts an episode on an explicit stream index.
  const State& reset(std::uint64_t episode_index);

  // Samples an action from the given distribution and an observation from
  // the true hypothesis, applies the Bayes operator and computes the reward
  // for the configured utility. Throws EpisodeFinishedError once done.
  ExperienceTuple step(const std::vector<double>& action_probs);

  bool done() const { return done_; }
  bool truncated() const { return truncated_; }
  const State& state() const { return state_; }
  int steps_taken() const { return steps_; }
  int true_secret() const { return true_secret_; }
  int true_useful() const { return true_useful_; }
  const EnvConfig& config() const { return cfg_; }
  const ObservationModel& model() const { return *model_; }

 private:
  const ObservationModel* model_;
  EnvConfig cfg_;
  std::mt19937_64 rng_;
  State state_;
  int true_secret_ = -1;
  int true_useful_ = -1;
  int steps_ = 0;
  bool done_ = true;
  bool truncated_ = false;
  std::uint64_t next_episode_ = 0;
};

// Runs one full episode under the policy. When the prior already meets the
// threshold the episode ends at tau = 0 with the reward evaluated on the
// prior itself (belief reward) or zero (information reward).
EpisodeLog run_episode(Environment& env, const Policy& policy);
EpisodeLog run_episode(Environment& env, const Policy& policy,
                       std::uint64_t episode_index);

// Step records as delimiter-separated text:
// t, belief (row-major), action_probs, action, z, reward.
void write_trace(const EpisodeLog& log, std::ostream& os);

}  // namespace privrel

#endif  // PRIVREL_ENV_HPP_
