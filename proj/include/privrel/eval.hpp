#ifndef PRIVREL_EVAL_HPP_
#define PRIVREL_EVAL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "privrel/env.hpp"
#include "privrel/model.hpp"
#include "privrel/policy.hpp"

namespace privrel {

struct EvalConfig {
  long episodes = 10000;
  std::uint64_t seed = 0;
  int max_steps = 5000;
};

// Monte Carlo estimates for one (policy, ls) pair. Confidence and decision
// time statistics are over terminated episodes; truncated episodes only
// show up in truncation_rate and in the MI estimate (their released symbols
// still leak). Standard errors come from the per-episode samples.
struct EvalReport {
  std::string policy;
  double ls = 0.0;
  double conf_true_u = 0.0;  // E[beta_tau(U_true)]
  double conf_true_u_se = 0.0;
  double conf_max_u = 0.0;  // E[max_u beta_tau(u)]
  double conf_max_u_se = 0.0;
  double mi_nats = 0.0;  // mean summed realized info rewards
  double mi_se = 0.0;
  double tau_mean = 0.0;
  double tau_std = 0.0;
  double tau_se = 0.0;
  double truncation_rate = 0.0;
  long episodes = 0;
  std::uint64_t seed = 0;
};

EvalReport evaluate(const ObservationModel& model, const Policy& policy,
                    double ls, const EvalConfig& cfg);

// Cross product of policies and thresholds, one report per pair.
std::vector<EvalReport> sweep(const ObservationModel& model,
                              std::span<const Policy* const> policies,
                              std::span<const double> ls_list,
                              const EvalConfig& cfg);

// One row per report; numbers carry 9 significant digits. Optional comment
// lines ("# ...") go before the header.
void summarize_csv(std::span<const EvalReport> reports, const std::string& path,
                   std::span<const std::string> provenance_comments = {});

// Exact quantities from exhaustive enumeration of every (a, z) path up to
// the horizon, with stopped paths emitting no further symbols. joint_mi is
// I(U; stopped path) from the joint path/hypothesis distribution; chain_mi
// re-derives it as the path-probability-weighted sum of per-step conditional
// MI values, so the two must agree.
struct OracleReport {
  double conf_true_u = 0.0;  // E[beta_tau(U_true) | terminated]
  double conf_max_u = 0.0;   // E[max_u beta_tau(u) | terminated]
  double joint_mi = 0.0;
  double chain_mi = 0.0;
  double tau_mean = 0.0;  // E[tau | terminated]
  double terminated_mass = 0.0;
  long stopped_paths = 0;
};

OracleReport exact_oracle(const ObservationModel& model, const Policy& policy,
                          double ls, int horizon);

}  // namespace privrel

#endif  // PRIVREL_EVAL_HPP_
