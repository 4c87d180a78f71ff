#include "privrel/a2c.hpp"

#include <cmath>
#include <fstream>

#include "privrel/errors.hpp"
#include "privrel/rng.hpp"

namespace privrel {

double td_error(double reward, double gamma, double v_next, double v_curr) {
  return reward + gamma * v_next - v_curr;
}

double critic_value(const MlpParams& critic, std::span<const double> input,
                    double v_max) {
  const auto raw = forward_raw(critic, input);
  return v_max * std::tanh(raw[0]);
}

double critic_loss_grad(const MlpParams& critic, std::span<const double> input,
                        double td_target, double v_max, MlpParams& grads) {
  ForwardCache cache;
  const auto raw = forward_raw(critic, input, &cache);
  const double t = std::tanh(raw[0]);
  const double v = v_max * t;
  const double delta = td_target - v;
  // d(delta^2)/draw = -2 delta * v_max * (1 - tanh^2)
  const double dl_draw = -2.0 * delta * v_max * (1.0 - t * t);
  if (!std::isfinite(dl_draw)) {
    throw NumericError("critic_loss_grad: non-finite gradient (target=" +
                       std::to_string(td_target) + ", v=" + std::to_string(v) + ")");
  }
  const double g[1] = {dl_draw};
  backward(critic, cache, g, grads);
  return delta;
}

double actor_loss_grad(const MlpParams& actor, ActorHeadKind head,
                       std::span<const double> input, int action, double delta,
                       double entropy_coeff, MlpParams& grads) {
  ForwardCache cache;
  const auto raw = forward_raw(actor, input, &cache);
  const ActionDistribution dist = head_distribution(head, raw);
  const int n = static_cast<int>(dist.probs.size());
  if (action < 0 || action >= n) {
    throw ConfigError("actor_loss_grad: action index out of range");
  }

  double entropy = 0.0;
  for (double p : dist.probs) {
    if (p > 0.0) entropy -= p * std::log(p);
  }
  const double loss = -dist.log_prob_of(action) * delta - entropy_coeff * entropy;

  std::vector<double> dl_draw(n, 0.0);
  if (head == ActorHeadKind::kSoftmaxDirect) {
    // d(-delta ln pi_a)/dy_k = delta (pi_k - 1{k=a})
    // d(-c H)/dy_k          = c pi_k (ln pi_k + H)
    for (int k = 0; k < n; ++k) {
      const double p = dist.probs[k];
      double g = delta * (p - (k == action ? 1.0 : 0.0));
      if (entropy_coeff != 0.0 && p > 0.0) {
        g += entropy_coeff * p * (std::log(p) + entropy);
      }
      dl_draw[k] = g;
    }
  } else {
    // xi = softplus(y), pi = xi / sum(xi)
    std::vector<double> xi(n);
    double xi_sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const double y = raw[k];
      xi[k] = y > 30.0 ? y : (y < -30.0 ? std::exp(y) : std::log1p(std::exp(y)));
      xi_sum += xi[k];
    }
    for (int k = 0; k < n; ++k) {
      // d ln pi_a / d xi_k = 1{k=a}/xi_a - 1/sum
      double g = -delta * ((k == action ? 1.0 / xi[action] : 0.0) - 1.0 / xi_sum);
      if (entropy_coeff != 0.0) {
        const double p = dist.probs[k];
        if (p > 0.0) g += entropy_coeff * (std::log(p) + entropy) / xi_sum;
      }
      const double sig = 1.0 / (1.0 + std::exp(-raw[k]));  // softplus'
      dl_draw[k] = g * sig;
    }
  }
  for (double g : dl_draw) {
    if (!std::isfinite(g)) {
      throw NumericError("actor_loss_grad: non-finite gradient");
    }
  }
  backward(actor, cache, dl_draw, grads);
  return loss;
}

double critic_update(MlpParams& critic, AdamState& adam,
                     const ExperienceTuple& tuple, const TrainConfig& cfg) {
  const double v_max = cfg.v_max > 0.0 ? cfg.v_max : 1.0;
  const double v_next =
      tuple.done ? 0.0
                 : critic_value(critic, tuple.next_state.belief().flat(), v_max);
  const double target = tuple.reward + cfg.gamma * v_next;
  MlpParams grads = MlpParams::zeros(critic.sizes);
  const double delta =
      critic_loss_grad(critic, tuple.state.belief().flat(), target, v_max, grads);
  adam_step(adam, critic, grads, cfg.lr_critic);
  return delta;
}

void actor_update(MlpParams& actor, AdamState& adam, const ExperienceTuple& tuple,
                  double delta, const TrainConfig& cfg) {
  MlpParams grads = MlpParams::zeros(actor.sizes);
  actor_loss_grad(actor, cfg.head, tuple.state.belief().flat(), tuple.action,
                  delta, cfg.entropy_coeff, grads);
  adam_step(adam, actor, grads, cfg.lr_actor);
}

double resolve_v_max(const TrainConfig& cfg, const ModelSpec& spec) {
  if (cfg.v_max > 0.0) return cfg.v_max;
  return std::max(1.0, std::log(static_cast<double>(spec.n_useful)));
}

TrainResult train(const ObservationModel& model, const EnvConfig& env_cfg,
                  const TrainConfig& cfg) {
  if (!cfg.valid()) throw ConfigError("train: invalid TrainConfig");

  TrainConfig resolved = cfg;
  resolved.v_max = resolve_v_max(cfg, model.spec);

  std::vector<int> actor_sizes, critic_sizes;
  actor_sizes.push_back(model.spec.joint_size());
  critic_sizes.push_back(model.spec.joint_size());
  for (int h : cfg.hidden) {
    actor_sizes.push_back(h);
    critic_sizes.push_back(h);
  }
  actor_sizes.push_back(model.spec.n_actions);
  critic_sizes.push_back(1);

  std::mt19937_64 init_rng(stream_seed(cfg.seed, 0x1717));
  TrainResult result;
  result.actor = MlpParams::he_uniform(actor_sizes, init_rng);
  result.critic = MlpParams::he_uniform(critic_sizes, init_rng);
  result.head = cfg.head;
  result.v_max = resolved.v_max;

  AdamState actor_adam = AdamState::for_params(result.actor);
  AdamState critic_adam = AdamState::for_params(result.critic);
  Environment env(model, env_cfg);

  MlpParams actor_grads = MlpParams::zeros(actor_sizes);
  MlpParams critic_grads = MlpParams::zeros(critic_sizes);

  result.curve.reserve(cfg.episodes);
  for (long ep = 0; ep < cfg.episodes; ++ep) {
    env.reset(static_cast<std::uint64_t>(ep));
    TrainEpisodeStats stats;
    stats.episode = ep;

    if (env.done()) {
      stats.total_reward = env_cfg.reward_kind == RewardKind::kBeliefReward
                               ? belief_reward(env.state(), env_cfg.ls)
                               : 0.0;
      stats.decision_time = 0;
      result.curve.push_back(stats);
      continue;
    }

    double critic_loss_sum = 0.0, actor_loss_sum = 0.0;
    long steps = 0;
    while (!env.done()) {
      const std::span<const double> input = env.state().belief().flat();
      const auto raw = forward_raw(result.actor, input);
      const ActionDistribution dist = head_distribution(cfg.head, raw);
      const ExperienceTuple tuple = env.step(dist.probs);

      const double v_next =
          tuple.done ? 0.0
                     : critic_value(result.critic, tuple.next_state.belief().flat(),
                                    resolved.v_max);
      const double target = tuple.reward + cfg.gamma * v_next;

      critic_grads.fill(0.0);
      const double delta = critic_loss_grad(result.critic, input, target,
                                            resolved.v_max, critic_grads);
      adam_step(critic_adam, result.critic, critic_grads, cfg.lr_critic);

      actor_grads.fill(0.0);
      const double actor_loss =
          actor_loss_grad(result.actor, cfg.head, input, tuple.action, delta,
                          cfg.entropy_coeff, actor_grads);
      adam_step(actor_adam, result.actor, actor_grads, cfg.lr_actor);

      critic_loss_sum += delta * delta;
      actor_loss_sum += actor_loss;
      stats.total_reward += tuple.reward;
      steps += 1;
    }
    stats.truncated = env.truncated();
    stats.decision_time = stats.truncated ? -1 : env.steps_taken();
    stats.critic_loss_mean = critic_loss_sum / steps;
    stats.actor_loss_mean = actor_loss_sum / steps;
    result.curve.push_back(stats);
  }
  return result;
}

void write_training_log(const std::vector<TrainEpisodeStats>& curve,
                        const std::string& path,
                        std::span<const std::string> provenance_comments) {
  std::ofstream os(path);
  if (!os) throw IoError("write_training_log: cannot open " + path);
  for (const auto& line : provenance_comments) os << "# " << line << "\n";
  os << "episode,return,tau,critic_loss_mean,actor_loss_mean\n";
  os.precision(9);
  for (const auto& s : curve) {
    os << s.episode << ',' << s.total_reward << ',' << s.decision_time << ','
       << s.critic_loss_mean << ',' << s.actor_loss_mean << '\n';
  }
  if (!os) throw IoError("write_training_log: write to " + path + " failed");
}

}  // namespace privrel
