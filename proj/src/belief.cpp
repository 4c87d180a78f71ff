#include "privrel/belief.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "privrel/errors.hpp"

namespace privrel {

Belief::Belief(int n_secret, int n_useful, std::vector<double> p)
    : n_secret_(n_secret), n_useful_(n_useful), p_(std::move(p)) {
  if (n_secret_ < 1 || n_useful_ < 1 ||
      p_.size() != static_cast<std::size_t>(n_secret_) * n_useful_) {
    throw ConfigError("Belief: table size does not match (n_secret, n_useful)");
  }
}

Belief Belief::uniform(int n_secret, int n_useful) {
  return Belief(n_secret, n_useful,
                std::vector<double>(static_cast<std::size_t>(n_secret) * n_useful,
                                    1.0 / (n_secret * n_useful)));
}

Belief Belief::from_prior(const ObservationModel& m) {
  return Belief(m.spec.n_secret, m.spec.n_useful, m.prior);
}

double Belief::sum() const {
  return std::accumulate(p_.begin(), p_.end(), 0.0);
}

bool Belief::valid(double tol) const {
  if (p_.empty()) return false;
  for (double v : p_) {
    if (!(v >= 0.0)) return false;
  }
  return std::abs(sum() - 1.0) <= tol;
}

std::vector<double> marginal_secret(const Belief& b) {
  std::vector<double> out(b.n_secret(), 0.0);
  for (int s = 0; s < b.n_secret(); ++s) {
    for (int u = 0; u < b.n_useful(); ++u) out[s] += b.at(s, u);
  }
  return out;
}

std::vector<double> marginal_useful(const Belief& b) {
  std::vector<double> out(b.n_useful(), 0.0);
  for (int s = 0; s < b.n_secret(); ++s) {
    for (int u = 0; u < b.n_useful(); ++u) out[u] += b.at(s, u);
  }
  return out;
}

double max_secret_belief(const Belief& b) {
  double best = 0.0;
  for (int s = 0; s < b.n_secret(); ++s) {
    double m = 0.0;
    for (int u = 0; u < b.n_useful(); ++u) m += b.at(s, u);
    best = std::max(best, m);
  }
  return best;
}

double max_useful_belief(const Belief& b) {
  double best = 0.0;
  for (int u = 0; u < b.n_useful(); ++u) {
    double m = 0.0;
    for (int s = 0; s < b.n_secret(); ++s) m += b.at(s, u);
    best = std::max(best, m);
  }
  return best;
}

const Belief& State::belief() const {
  if (!belief_.has_value()) {
    throw NumericError("State::belief: final state has no belief");
  }
  return *belief_;
}

Belief bayes_update(const Belief& belief, int action, int obs,
                    const ObservationModel& model) {
  const int ns = model.spec.n_secret;
  const int nu = model.spec.n_useful;
  if (belief.n_secret() != ns || belief.n_useful() != nu) {
    throw ConfigError("bayes_update: belief shape does not match model");
  }
  if (action < 0 || action >= model.spec.n_actions || obs < 0 ||
      obs >= model.spec.n_obs) {
    throw ConfigError("bayes_update: action/observation index out of range");
  }

  std::vector<double> post(static_cast<std::size_t>(ns) * nu);
  double evidence = 0.0;
  for (int s = 0; s < ns; ++s) {
    for (int u = 0; u < nu; ++u) {
      const double v = model.q_at(action, s, u, obs) * belief.at(s, u);
      post[static_cast<std::size_t>(s) * nu + u] = v;
      evidence += v;
    }
  }
  if (!(evidence > 0.0)) {
    throw ImpossibleObservationError(
        action, obs,
        "bayes_update: observation z=" + std::to_string(obs) + " under action a=" +
            std::to_string(action) + " has zero probability under the belief");
  }
  for (double& v : post) v /= evidence;

  // Dividing by the evidence already normalizes up to rounding; anything
  // beyond 1e-6 of residual drift means the inputs were not a belief.
  double total = std::accumulate(post.begin(), post.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-6) {
    throw NumericError("bayes_update: posterior drift " +
                       std::to_string(total - 1.0) + " exceeds 1e-6");
  }
  for (double& v : post) v /= total;
  return Belief(ns, nu, std::move(post));
}

State apply_bayes_operator(const State& x, int action, int obs,
                           const ObservationModel& model, double ls) {
  if (!(ls > 0.0 && ls <= 1.0)) {
    throw ConfigError("apply_bayes_operator: ls must lie in (0, 1]");
  }
  if (x.is_final_state()) return State::final_state();
  if (max_secret_belief(x.belief()) >= ls) return State::final_state();
  return State(bayes_update(x.belief(), action, obs, model));
}

bool is_final(const State& x, double ls) {
  if (x.is_final_state()) return true;
  return max_secret_belief(x.belief()) >= ls;
}

}  // namespace privrel
