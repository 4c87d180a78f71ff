#ifndef PRIVREL_BELIEF_HPP_
#define PRIVREL_BELIEF_HPP_

#include <optional>
#include <span>
#include <vector>

#include "privrel/model.hpp"

namespace privrel {

// The adversary's joint posterior over (secret, useful). Values are stored
// row-major with the secret index major, matching the flattened network
// input layout.
class Belief {
 public:
  Belief() = default;
  Belief(int n_secret, int n_useful, std::vector<double> p);
  static Belief uniform(int n_secret, int n_useful);
  static Belief from_prior(const ObservationModel& m);

  int n_secret() const { return n_secret_; }
  int n_useful() const { return n_useful_; }
  double at(int s, int u) const {
    return p_[static_cast<std::size_t>(s) * n_useful_ + u];
  }
  double& at(int s, int u) {
    return p_[static_cast<std::size_t>(s) * n_useful_ + u];
  }
  std::span<const double> flat() const { return p_; }
  double sum() const;
  bool valid(double tol = 1e-10) const;

 private:
  int n_secret_ = 0;
  int n_useful_ = 0;
  std::vector<double> p_;
};

std::vector<double> marginal_secret(const Belief& b);
std::vector<double> marginal_useful(const Belief& b);
double max_secret_belief(const Belief& b);
double max_useful_belief(const Belief& b);

// A belief-MDP state: either a live belief or the absorbing final state F.
class State {
 public:
  State() : belief_(std::nullopt) {}
  explicit State(Belief b) : belief_(std::move(b)) {}
  static State final_state() { return State(); }

  bool is_final_state() const { return !belief_.has_value(); }
  const Belief& belief() const;

 private:
  std::optional<Belief> belief_;
};

// Posterior after observing (a, z); the action probabilities cancel between
// numerator and denominator and are therefore not an input. Throws
// ImpossibleObservationError when the observation has zero evidence under
// the belief.
Belief bayes_update(const Belief& belief, int action, int obs,
                    const ObservationModel& model);

// The belief-MDP transition: F stays F, a belief at or above the confidence
// threshold collapses to F without an update, and anything below the
// threshold is Bayes-updated. The threshold test reads the belief before the
// update.
State apply_bayes_operator(const State& x, int action, int obs,
                           const ObservationModel& model, double ls);

// True iff x is F or the secret marginal already meets the threshold.
bool is_final(const State& x, double ls);

}  // namespace privrel

#endif  // PRIVREL_BELIEF_HPP_
