#include "privrel/reward.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "privrel/errors.hpp"

namespace privrel {

double belief_reward(const State& x, double ls) {
  if (x.is_final_state()) return 0.0;
  if (max_secret_belief(x.belief()) >= ls) return max_useful_belief(x.belief());
  return 0.0;
}

double per_step_mi(const Belief& belief, std::span<const double> action_probs,
                   const ObservationModel& model) {
  const int ns = model.spec.n_secret;
  const int nu = model.spec.n_useful;
  const int nz = model.spec.n_obs;
  if (belief.n_secret() != ns || belief.n_useful() != nu) {
    throw ConfigError("per_step_mi: belief shape does not match model");
  }
  if (static_cast<int>(action_probs.size()) != model.spec.n_actions) {
    throw ConfigError("per_step_mi: action distribution has wrong length");
  }

  const std::vector<double> bu = marginal_useful(belief);
  std::vector<double> pzu(nu);

  // I(U; Z,A | b) = sum_a pi(a) sum_z sum_u p(z,u|a) ln( p(z,u|a) / (b(u) p(z|a)) )
  // with p(z,u|a) = sum_s q(z|a,s,u) b(s,u). The pi(a) factors inside the
  // log cancel, so only the outer weight remains.
  double total = 0.0;
  for (int a = 0; a < model.spec.n_actions; ++a) {
    const double pa = action_probs[a];
    if (pa <= 0.0) continue;
    double mi_a = 0.0;
    for (int z = 0; z < nz; ++z) {
      double pz = 0.0;
      for (int u = 0; u < nu; ++u) {
        double v = 0.0;
        for (int s = 0; s < ns; ++s) v += model.q_at(a, s, u, z) * belief.at(s, u);
        pzu[u] = v;
        pz += v;
      }
      if (pz <= 0.0) continue;
      for (int u = 0; u < nu; ++u) {
        if (pzu[u] <= 0.0) continue;
        mi_a += pzu[u] * std::log(pzu[u] / (bu[u] * pz));
      }
    }
    total += pa * mi_a;
  }
  // Mathematically nonnegative; rounding can leave a tiny negative residue.
  return std::max(total, 0.0);
}

double realized_info_reward(const Belief& prev, const Belief& next) {
  const std::vector<double> p = marginal_useful(prev);
  const std::vector<double> n = marginal_useful(next);
  if (p.size() != n.size()) {
    throw ConfigError("realized_info_reward: beliefs have different U spaces");
  }
  double kl = 0.0;
  for (std::size_t u = 0; u < n.size(); ++u) {
    if (n[u] <= 0.0) continue;
    if (p[u] <= 0.0) {
      throw InconsistentUpdateError(
          "realized_info_reward: posterior mass on u=" + std::to_string(u) +
          " outside the prior support; not a Bayes update");
    }
    kl += n[u] * std::log(n[u] / p[u]);
  }
  return std::max(kl, 0.0);
}

double realized_info_reward_entropy_diff(const Belief& prev, const Belief& next) {
  auto entropy = [](const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p) {
      if (v > 0.0) h -= v * std::log(v);
    }
    return h;
  };
  return entropy(marginal_useful(prev)) - entropy(marginal_useful(next));
}

double info_reward(const State& x, const Belief& prev, const State& next,
                   double ls, InfoEstimator estimator) {
  if (x.is_final_state() || next.is_final_state()) return 0.0;
  if (max_secret_belief(x.belief()) >= ls) return 0.0;
  if (estimator == InfoEstimator::kEntropyDifference) {
    return realized_info_reward_entropy_diff(prev, next.belief());
  }
  return realized_info_reward(prev, next.belief());
}

double accumulate_total_mi(std::span<const double> per_step_values) {
  // Kahan summation keeps long episodes order-stable.
  double sum = 0.0, c = 0.0;
  for (double v : per_step_values) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace privrel
