#ifndef PRIVREL_A2C_HPP_
#define PRIVREL_A2C_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "privrel/env.hpp"
#include "privrel/mlp.hpp"
#include "privrel/policy.hpp"

namespace privrel {

struct TrainConfig {
  double gamma = 0.999;
  double lr_actor = 1e-4;
  double lr_critic = 1e-3;
  long episodes = 20000;
  double v_max = 0.0;  // <= 0: auto max(1, ln n_useful)
  std::uint64_t seed = 0;
  ActorHeadKind head = ActorHeadKind::kSoftmaxDirect;
  double entropy_coeff = 0.0;
  std::vector<int> hidden = {64, 64};

  bool valid() const {
    return gamma > 0.0 && gamma <= 1.0 && lr_actor > 0.0 && lr_critic > 0.0 &&
           episodes >= 0 && !hidden.empty();
  }
};

double td_error(double reward, double gamma, double v_next, double v_curr);

// Critic output: v_max * tanh(raw), so |V| < v_max always.
double critic_value(const MlpParams& critic, std::span<const double> input,
                    double v_max);

// Semi-gradient of the squared TD error with the target held fixed.
// Writes into `grads` (zero-initialized by the caller) and returns the TD
// error target - V(input).
double critic_loss_grad(const MlpParams& critic, std::span<const double> input,
                        double td_target, double v_max, MlpParams& grads);

// Gradient of -ln pi(action|input) * delta - entropy_coeff * H(pi), with
// delta treated as a constant. Returns the loss value.
double actor_loss_grad(const MlpParams& actor, ActorHeadKind head,
                       std::span<const double> input, int action, double delta,
                       double entropy_coeff, MlpParams& grads);

// One ADAM step on the critic for this transition; returns the TD error of
// the pre-update parameters, which is the advantage estimate the actor uses.
double critic_update(MlpParams& critic, AdamState& adam,
                     const ExperienceTuple& tuple, const TrainConfig& cfg);

// One ADAM step on the actor against the given advantage.
void actor_update(MlpParams& actor, AdamState& adam, const ExperienceTuple& tuple,
                  double delta, const TrainConfig& cfg);

struct TrainEpisodeStats {
  long episode = 0;
  double total_reward = 0.0;
  int decision_time = -1;  // -1 when truncated
  bool truncated = false;
  double critic_loss_mean = 0.0;
  double actor_loss_mean = 0.0;
};

struct TrainResult {
  MlpParams actor;
  MlpParams critic;
  ActorHeadKind head = ActorHeadKind::kSoftmaxDirect;
  double v_max = 1.0;
  std::vector<TrainEpisodeStats> curve;
};

// Online one-step advantage actor-critic: per transition, act, step the
// environment, form the TD error, then update critic and actor. Single
// threaded and bit-reproducible for a fixed seed.
TrainResult train(const ObservationModel& model, const EnvConfig& env_cfg,
                  const TrainConfig& cfg);

// Training curve as delimiter-separated rows:
// episode, return, tau, critic_loss_mean, actor_loss_mean.
void write_training_log(const std::vector<TrainEpisodeStats>& curve,
                        const std::string& path,
                        std::span<const std::string> provenance_comments = {});

// Resolved critic output bound for a model: max(1, ln n_useful) covers the
// best return of both reward regimes.
double resolve_v_max(const TrainConfig& cfg, const ModelSpec& spec);

}  // namespace privrel

#endif  // PRIVREL_A2C_HPP_
