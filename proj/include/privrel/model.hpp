#ifndef PRIVREL_MODEL_HPP_
#define PRIVREL_MODEL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace privrel {

// Sizes of the hypothesis, action and observation spaces.
// S = {0..n_secret-1}, U = {0..n_useful-1}, A = {0..n_actions-1},
// Z = {0..n_obs-1}.
struct ModelSpec {
  int n_secret = 0;
  int n_useful = 0;
  int n_actions = 0;
  int n_obs = 0;

  int joint_size() const { return n_secret * n_useful; }
  bool valid() const {
    return n_secret >= 1 && n_useful >= 1 && n_actions >= 1 && n_obs >= 2;
  }
};

// The observation channel q(z|a,s,u) as a dense tensor plus the joint prior
// over (secret, useful). Immutable in normal use; plain data so that tests
// can build (and deliberately corrupt) instances.
struct ObservationModel {
  ModelSpec spec;
  std::vector<double> q;      // [action][secret][useful][obs], row-major
  std::vector<double> prior;  // [secret][useful], row-major

  double q_at(int a, int s, int u, int z) const {
    return q[((static_cast<std::size_t>(a) * spec.n_secret + s) * spec.n_useful + u) *
                 spec.n_obs +
             z];
  }
  double& q_at(int a, int s, int u, int z) {
    return q[((static_cast<std::size_t>(a) * spec.n_secret + s) * spec.n_useful + u) *
                 spec.n_obs +
             z];
  }
  std::span<const double> q_row(int a, int s, int u) const {
    const std::size_t off =
        ((static_cast<std::size_t>(a) * spec.n_secret + s) * spec.n_useful + u) *
        spec.n_obs;
    return {q.data() + off, static_cast<std::size_t>(spec.n_obs)};
  }
  double prior_at(int s, int u) const {
    return prior[static_cast<std::size_t>(s) * spec.n_useful + u];
  }
  double& prior_at(int s, int u) {
    return prior[static_cast<std::size_t>(s) * spec.n_useful + u];
  }
};

// Recipe for the Gaussian-derived channel: per-row sigma drawn uniformly from
// [sigma_low, sigma_high], densities evaluated on an evenly spaced grid of
// n_obs points over [grid_low, grid_high] and normalized per row.
struct GeneratorSpec {
  ModelSpec spec;
  double sigma_low = 0.5;
  double sigma_high = 1.5;
  double grid_low = -3.0;
  double grid_high = 6.0;
  std::uint64_t seed = 0;

  bool valid() const {
    return spec.valid() && sigma_low > 0.0 && sigma_low <= sigma_high &&
           grid_low < grid_high;
  }
};

// Builds the channel where action a singles out secret s* = n_secret-1-a:
// rows with s != s* are Gaussians centered at 0, rows with s == s* are
// centered at u+1, so each action discloses one secret more than the others
// and separates the useful hypotheses only for that secret. Sigmas are drawn
// in lexicographic (a,s,u) order; the prior is uniform. Deterministic given
// the seed.
ObservationModel generate_gaussian_model(const GeneratorSpec& gen);

struct ModelViolation {
  enum class Kind { kSpec, kRowSum, kNegativeEntry, kPriorSum, kPriorNegative };
  Kind kind;
  int action = -1;
  int secret = -1;
  int useful = -1;
  int obs = -1;
  double value = 0.0;

  std::string describe() const;
};

// Checks every invariant (row stochasticity within 1e-12, nonnegative
// entries, normalized prior) and returns one entry per violation with the
// offending indices. Empty result means the model is valid.
std::vector<ModelViolation> validate(const ObservationModel& m);

// Versioned JSON round trip; probabilities survive save/load bit-exactly.
// load_model re-checks (but never re-applies) normalization.
void save_model(const ObservationModel& m, const std::string& path);
ObservationModel load_model(const std::string& path);

}  // namespace privrel

#endif  // PRIVREL_MODEL_HPP_
