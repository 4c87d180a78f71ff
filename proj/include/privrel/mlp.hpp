#ifndef PRIVREL_MLP_HPP_
#define PRIVREL_MLP_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace privrel {

// Weights of a fully connected net with rectifier hidden layers and a linear
// (raw) output; output activations (softmax, softplus, tanh) are applied by
// the caller. weights[l] is sizes[l+1] x sizes[l], row-major.
struct MlpParams {
  std::vector<int> sizes;
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  static MlpParams zeros(std::vector<int> sizes);
  // He-uniform init for the rectifier layers; the output layer is scaled
  // down so fresh actors start near uniform and fresh critics near zero.
  static MlpParams he_uniform(std::vector<int> sizes, std::mt19937_64& rng,
                              double output_scale = 1e-2);

  int input_size() const { return sizes.front(); }
  int output_size() const { return sizes.back(); }
  int layer_count() const { return static_cast<int>(weights.size()); }
  std::size_t count() const;
  bool finite() const;
  bool same_shape(const MlpParams& other) const;
  void fill(double value);
};

// Activations recorded by a forward pass, consumed by backward().
// post[0] is the input; pre[l] holds the affine outputs of layer l.
struct ForwardCache {
  std::vector<std::vector<double>> pre;
  std::vector<std::vector<double>> post;
};

// Affine -> rectifier chain; returns the raw output layer values.
std::vector<double> forward_raw(const MlpParams& params,
                                std::span<const double> input,
                                ForwardCache* cache = nullptr);

// Backpropagates dloss/draw through the cached pass, accumulating into
// `grads` (same shape as params, caller-initialized).
void backward(const MlpParams& params, const ForwardCache& cache,
              std::span<const double> dloss_draw, MlpParams& grads);

// Standard ADAM with bias correction.
struct AdamState {
  MlpParams m;
  MlpParams v;
  long step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState for_params(const MlpParams& params);
};

void adam_step(AdamState& adam, MlpParams& params, const MlpParams& grads,
               double lr);

}  // namespace privrel

#endif  // PRIVREL_MLP_HPP_
