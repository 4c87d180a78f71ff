#ifndef PRIVREL_POLICY_HPP_
#define PRIVREL_POLICY_HPP_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "privrel/belief.hpp"
#include "privrel/mlp.hpp"

namespace privrel {

// A distribution over release mechanisms.
struct ActionDistribution {
  std::vector<double> probs;

  // ln probs[a], floored at 1e-12 inside the log only.
  double log_prob_of(int a) const;
};

bool is_distribution(std::span<const double> p, double tol = 1e-10);

// How the actor network's raw outputs become action probabilities.
enum class ActorHeadKind {
  kSoftmaxDirect,      // raw outputs are logits
  kDirichletCompound,  // softplus(raw) are Dirichlet concentrations; the
                       // action marginal is the Dirichlet mean
};

// Applies the head transform to raw network outputs. Throws NumericError on
// non-finite inputs.
ActionDistribution head_distribution(ActorHeadKind head,
                                     std::span<const double> raw);

// A policy maps live states to action distributions. Policies never see the
// hidden truth; the belief is all they get.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual ActionDistribution act(const State& x) const = 0;
  virtual const std::string& name() const = 0;
  virtual int n_actions() const = 0;
};

// State-independent baseline with a fixed action distribution.
class RandomPolicy final : public Policy {
 public:
  RandomPolicy(std::string name, std::vector<double> probs);

  ActionDistribution act(const State& x) const override;
  const std::string& name() const override { return name_; }
  int n_actions() const override { return static_cast<int>(probs_.size()); }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::string name_;
  std::vector<double> probs_;
};

// Neural actor: the flattened joint belief goes in, the head transform of
// the network output comes out. Deterministic per (params, state); sampling
// happens in the environment.
class ActorPolicy final : public Policy {
 public:
  ActorPolicy(std::string name, MlpParams params, ActorHeadKind head);

  ActionDistribution act(const State& x) const override;
  const std::string& name() const override { return name_; }
  int n_actions() const override { return params_.output_size(); }
  const MlpParams& params() const { return params_; }
  ActorHeadKind head() const { return head_; }

 private:
  std::string name_;
  MlpParams params_;
  ActorHeadKind head_;
};

const char* head_kind_name(ActorHeadKind head);
ActorHeadKind head_kind_from_name(const std::string& name);

// Versioned JSON round trip for both policy kinds; weights survive exactly.
void save_policy(const Policy& policy, const std::string& path);
std::unique_ptr<Policy> load_policy(const std::string& path);

}  // namespace privrel

#endif  // PRIVREL_POLICY_HPP_
