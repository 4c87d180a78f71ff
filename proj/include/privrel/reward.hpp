#ifndef PRIVREL_REWARD_HPP_
#define PRIVREL_REWARD_HPP_

#include <span>

#include "privrel/belief.hpp"
#include "privrel/model.hpp"

namespace privrel {

// Which utility the environment pays out.
enum class RewardKind { kBeliefReward, kInfoReward };

// Per-step information reward estimator. Both have expectation equal to the
// per-step conditional MI; the KL form is nonnegative, the entropy
// difference can go negative on individual steps.
enum class InfoEstimator { kKlDivergence, kEntropyDifference };

// Terminal utility: the adversary's best guess about the useful hypothesis,
// paid only at the state whose secret marginal meets the threshold.
double belief_reward(const State& x, double ls);

// Conditional mutual information I(U; Z_t, A_t | belief) in nats, for one
// step under the given action distribution. Zero-probability terms
// contribute zero; the result lies in [0, ln n_useful].
double per_step_mi(const Belief& belief, std::span<const double> action_probs,
                   const ObservationModel& model);

// KL divergence from the previous to the next useful-marginal, i.e. the
// information about U actually gained by one realized Bayes update.
// Unbiased for per_step_mi over (a, z).
double realized_info_reward(const Belief& prev, const Belief& next);

// Alternative estimator H(U|prev) - H(U|next); same expectation, may be
// negative on individual steps.
double realized_info_reward_entropy_diff(const Belief& prev, const Belief& next);

// The per-step information reward of the transition x --(a,z)--> next:
// the realized gain when x is strictly below the threshold, zero once the
// episode is over (x final or at/above the threshold).
double info_reward(const State& x, const Belief& prev, const State& next,
                   double ls, InfoEstimator estimator = InfoEstimator::kKlDivergence);

// Compensated sum of per-step MI terms; the chain rule makes this the total
// MI between U and the released sequence when fed exact per-step values.
double accumulate_total_mi(std::span<const double> per_step_values);

}  // namespace privrel

#endif  // PRIVREL_REWARD_HPP_
