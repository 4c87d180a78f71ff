#include "privrel/env.hpp"

#include <cassert>
#include <cmath>
#include <ostream>

#include "privrel/errors.hpp"
#include "privrel/rng.hpp"

namespace privrel {

Environment::Environment(const ObservationModel& model, EnvConfig cfg)
    : model_(&model), cfg_(cfg) {
  if (!cfg_.valid()) {
    throw ConfigError("Environment: ls must lie in (0,1] and max_steps >= 1");
  }
  auto violations = validate(model);
  if (!violations.empty()) {
    throw ConfigError("Environment: model invalid: " + violations.front().describe());
  }
}

const State& Environment::reset() { return reset(next_episode_); }

const State& Environment::reset(std::uint64_t episode_index) {
  next_episode_ = episode_index + 1;
  rng_.seed(stream_seed(cfg_.seed, episode_index));

  const int joint = sample_categorical(model_->prior, uniform01(rng_));
  true_secret_ = joint / model_->spec.n_useful;
  true_useful_ = joint % model_->spec.n_useful;

  state_ = State(Belief::from_prior(*model_));
  steps_ = 0;
  truncated_ = false;
  done_ = is_final(state_, cfg_.ls);
  return state_;
}

ExperienceTuple Environment::step(const std::vector<double>& action_probs) {
  if (done_) {
    throw EpisodeFinishedError("Environment::step: episode already finished");
  }
  if (static_cast<int>(action_probs.size()) != model_->spec.n_actions ||
      !is_distribution(action_probs, 1e-9)) {
    throw ConfigError("Environment::step: action_probs is not a distribution over A");
  }

  const int action = sample_categorical(action_probs, uniform01(rng_));
  const auto row = model_->q_row(action, true_secret_, true_useful_);
  const int obs = sample_categorical(row, uniform01(rng_));

  const Belief prev = state_.belief();
  State next = apply_bayes_operator(state_, action, obs, *model_, cfg_.ls);

#ifndef NDEBUG
  {
    // Independent recomputation of the posterior, reversed iteration order.
    const Belief& nb = next.belief();
    long double evidence = 0.0L;
    for (int s = model_->spec.n_secret - 1; s >= 0; --s)
      for (int u = model_->spec.n_useful - 1; u >= 0; --u)
        evidence += static_cast<long double>(model_->q_at(action, s, u, obs)) *
                    prev.at(s, u);
    for (int s = 0; s < model_->spec.n_secret; ++s) {
      for (int u = 0; u < model_->spec.n_useful; ++u) {
        const long double ref =
            static_cast<long double>(model_->q_at(action, s, u, obs)) *
            prev.at(s, u) / evidence;
        assert(std::abs(static_cast<double>(ref) - nb.at(s, u)) < 1e-12);
      }
    }
  }
#endif

  double reward = 0.0;
  if (cfg_.reward_kind == RewardKind::kBeliefReward) {
    reward = belief_reward(next, cfg_.ls);
  } else {
    reward = info_reward(state_, prev, next, cfg_.ls, cfg_.info_estimator);
  }

  steps_ += 1;
  const bool crossed = is_final(next, cfg_.ls);
  truncated_ = !crossed && steps_ >= cfg_.max_steps;
  done_ = crossed || truncated_;

  ExperienceTuple tuple;
  tuple.state = state_;
  tuple.action_probs = action_probs;
  tuple.action = action;
  tuple.reward = reward;
  tuple.observation = obs;
  tuple.next_state = next;
  tuple.done = done_;

  state_ = std::move(next);
  return tuple;
}

namespace {

EpisodeLog finish_log(Environment& env, const Policy& policy) {
  EpisodeLog log;
  log.true_secret = env.true_secret();
  log.true_useful = env.true_useful();

  if (env.done()) {
    // Prior already meets the threshold: tau = 0, reward from the prior.
    log.decision_time = 0;
    log.terminal_belief = env.state().belief();
    log.total_reward = env.config().reward_kind == RewardKind::kBeliefReward
                           ? belief_reward(env.state(), env.config().ls)
                           : 0.0;
    return log;
  }

  double total = 0.0;
  while (!env.done()) {
    ActionDistribution dist = policy.act(env.state());
    ExperienceTuple tuple = env.step(dist.probs);
    total += tuple.reward;
    log.steps.push_back(std::move(tuple));
  }
  log.truncated = env.truncated();
  log.decision_time = log.truncated ? -1 : static_cast<int>(log.steps.size());
  log.terminal_belief = log.steps.back().next_state.belief();
  log.total_reward = total;
  return log;
}

}  // namespace

EpisodeLog run_episode(Environment& env, const Policy& policy) {
  env.reset();
  return finish_log(env, policy);
}

EpisodeLog run_episode(Environment& env, const Policy& policy,
                       std::uint64_t episode_index) {
  env.reset(episode_index);
  return finish_log(env, policy);
}

void write_trace(const EpisodeLog& log, std::ostream& os) {
  os.precision(17);
  for (std::size_t t = 0; t < log.steps.size(); ++t) {
    const ExperienceTuple& e = log.steps[t];
    os << t;
    for (double v : e.state.belief().flat()) os << '\t' << v;
    for (double v : e.action_probs) os << '\t' << v;
    os << '\t' << e.action << '\t' << e.observation << '\t' << e.reward << '\n';
  }
}

}  // namespace privrel
