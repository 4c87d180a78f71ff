#include "privrel/mlp.hpp"

#include <cmath>
#include <string>

#include "privrel/errors.hpp"
#include "privrel/rng.hpp"

namespace privrel {

MlpParams MlpParams::zeros(std::vector<int> sizes) {
  if (sizes.size() < 2) {
    throw ConfigError("MlpParams: need at least input and output layer");
  }
  for (int s : sizes) {
    if (s < 1) throw ConfigError("MlpParams: layer sizes must be positive");
  }
  MlpParams p;
  p.sizes = std::move(sizes);
  for (std::size_t l = 0; l + 1 < p.sizes.size(); ++l) {
    p.weights.emplace_back(
        static_cast<std::size_t>(p.sizes[l + 1]) * p.sizes[l], 0.0);
    p.biases.emplace_back(p.sizes[l + 1], 0.0);
  }
  return p;
}

MlpParams MlpParams::he_uniform(std::vector<int> sizes, std::mt19937_64& rng,
                                double output_scale) {
  MlpParams p = zeros(std::move(sizes));
  for (int l = 0; l < p.layer_count(); ++l) {
    const double bound = std::sqrt(6.0 / p.sizes[l]);
    const double scale = (l == p.layer_count() - 1) ? output_scale : 1.0;
    for (double& w : p.weights[l]) w = scale * uniform_in(rng, -bound, bound);
  }
  return p;
}

std::size_t MlpParams::count() const {
  std::size_t n = 0;
  for (const auto& w : weights) n += w.size();
  for (const auto& b : biases) n += b.size();
  return n;
}

bool MlpParams::finite() const {
  for (const auto& w : weights) {
    for (double v : w) {
      if (!std::isfinite(v)) return false;
    }
  }
  for (const auto& b : biases) {
    for (double v : b) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

bool MlpParams::same_shape(const MlpParams& other) const {
  return sizes == other.sizes;
}

void MlpParams::fill(double value) {
  for (auto& w : weights) std::fill(w.begin(), w.end(), value);
  for (auto& b : biases) std::fill(b.begin(), b.end(), value);
}

std::vector<double> forward_raw(const MlpParams& params,
                                std::span<const double> input,
                                ForwardCache* cache) {
  if (static_cast<int>(input.size()) != params.input_size()) {
    throw ConfigError("forward_raw: input size " + std::to_string(input.size()) +
                      " does not match network input " +
                      std::to_string(params.input_size()));
  }
  const int layers = params.layer_count();
  if (cache) {
    cache->pre.assign(layers, {});
    cache->post.assign(layers + 1, {});
    cache->post[0].assign(input.begin(), input.end());
  }
  std::vector<double> act(input.begin(), input.end());
  std::vector<double> next;
  for (int l = 0; l < layers; ++l) {
    const int rows = params.sizes[l + 1];
    const int cols = params.sizes[l];
    const double* w = params.weights[l].data();
    next.assign(rows, 0.0);
    for (int r = 0; r < rows; ++r) {
      double sum = params.biases[l][r];
      const double* wr = w + static_cast<std::size_t>(r) * cols;
      for (int c = 0; c < cols; ++c) sum += wr[c] * act[c];
      next[r] = sum;
    }
    if (cache) cache->pre[l] = next;
    if (l + 1 < layers) {
      for (double& v : next) v = v > 0.0 ? v : 0.0;  // rectifier
    }
    if (cache) cache->post[l + 1] = next;
    act.swap(next);
  }
  return act;
}

void backward(const MlpParams& params, const ForwardCache& cache,
              std::span<const double> dloss_draw, MlpParams& grads) {
  const int layers = params.layer_count();
  if (!grads.same_shape(params)) {
    throw ConfigError("backward: gradient buffer shape mismatch");
  }
  std::vector<double> g(dloss_draw.begin(), dloss_draw.end());
  std::vector<double> g_prev;
  for (int l = layers - 1; l >= 0; --l) {
    const int rows = params.sizes[l + 1];
    const int cols = params.sizes[l];
    const std::vector<double>& below = cache.post[l];
    double* gw = grads.weights[l].data();
    for (int r = 0; r < rows; ++r) {
      grads.biases[l][r] += g[r];
      double* gwr = gw + static_cast<std::size_t>(r) * cols;
      for (int c = 0; c < cols; ++c) gwr[c] += g[r] * below[c];
    }
    if (l == 0) break;
    const double* w = params.weights[l].data();
    g_prev.assign(cols, 0.0);
    for (int r = 0; r < rows; ++r) {
      const double* wr = w + static_cast<std::size_t>(r) * cols;
      for (int c = 0; c < cols; ++c) g_prev[c] += wr[c] * g[r];
    }
    // rectifier derivative at the pre-activation of layer l-1
    const std::vector<double>& pre = cache.pre[l - 1];
    for (int c = 0; c < cols; ++c) {
      if (pre[c] <= 0.0) g_prev[c] = 0.0;
    }
    g.swap(g_prev);
  }
}

AdamState AdamState::for_params(const MlpParams& params) {
  AdamState s;
  s.m = MlpParams::zeros(params.sizes);
  s.v = MlpParams::zeros(params.sizes);
  return s;
}

namespace {

void adam_apply(std::vector<double>& p, const std::vector<double>& g,
                std::vector<double>& m, std::vector<double>& v, double lr,
                double b1, double b2, double eps, double b1c, double b2c) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    m[i] = b1 * m[i] + (1.0 - b1) * g[i];
    v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
    const double mhat = m[i] / b1c;
    const double vhat = v[i] / b2c;
    p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

}  // namespace

void adam_step(AdamState& adam, MlpParams& params, const MlpParams& grads,
               double lr) {
  if (!adam.m.same_shape(params) || !grads.same_shape(params)) {
    throw ConfigError("adam_step: shape mismatch");
  }
  adam.step += 1;
  const double b1c = 1.0 - std::pow(adam.beta1, adam.step);
  const double b2c = 1.0 - std::pow(adam.beta2, adam.step);
  for (int l = 0; l < params.layer_count(); ++l) {
    adam_apply(params.weights[l], grads.weights[l], adam.m.weights[l],
               adam.v.weights[l], lr, adam.beta1, adam.beta2, adam.epsilon, b1c,
               b2c);
    adam_apply(params.biases[l], grads.biases[l], adam.m.biases[l],
               adam.v.biases[l], lr, adam.beta1, adam.beta2, adam.epsilon, b1c,
               b2c);
  }
}

}  // namespace privrel
