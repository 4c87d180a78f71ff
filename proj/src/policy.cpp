#include "privrel/policy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "privrel/errors.hpp"

namespace privrel {

namespace {

constexpr int kPolicyFormatVersion = 1;
const char* const kPolicyFormatName = "privrel-policy";

double softplus(double x) {
  if (x > 30.0) return x;
  if (x < -30.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

}  // namespace

double ActionDistribution::log_prob_of(int a) const {
  return std::log(std::max(probs.at(a), 1e-12));
}

bool is_distribution(std::span<const double> p, double tol) {
  if (p.empty()) return false;
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

ActionDistribution head_distribution(ActorHeadKind head,
                                     std::span<const double> raw) {
  for (double v : raw) {
    if (!std::isfinite(v)) {
      throw NumericError("head_distribution: non-finite network output");
    }
  }
  ActionDistribution out;
  out.probs.resize(raw.size());
  if (head == ActorHeadKind::kSoftmaxDirect) {
    const double m = *std::max_element(raw.begin(), raw.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      out.probs[i] = std::exp(raw[i] - m);
      sum += out.probs[i];
    }
    for (double& v : out.probs) v /= sum;
  } else {
    double sum = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      out.probs[i] = softplus(raw[i]);  // strictly positive concentration
      sum += out.probs[i];
    }
    for (double& v : out.probs) v /= sum;  // Dirichlet mean
  }
  return out;
}

RandomPolicy::RandomPolicy(std::string name, std::vector<double> probs)
    : name_(std::move(name)), probs_(std::move(probs)) {
  if (!is_distribution(probs_)) {
    throw ConfigError("RandomPolicy '" + name_ +
                      "': probs is not a probability distribution");
  }
}

ActionDistribution RandomPolicy::act(const State&) const {
  return ActionDistribution{probs_};
}

ActorPolicy::ActorPolicy(std::string name, MlpParams params, ActorHeadKind head)
    : name_(std::move(name)), params_(std::move(params)), head_(head) {
  if (!params_.finite()) {
    throw NumericError("ActorPolicy '" + name_ + "': non-finite parameters");
  }
}

ActionDistribution ActorPolicy::act(const State& x) const {
  const auto raw = forward_raw(params_, x.belief().flat());
  return head_distribution(head_, raw);
}

const char* head_kind_name(ActorHeadKind head) {
  return head == ActorHeadKind::kSoftmaxDirect ? "softmax" : "dirichlet";
}

ActorHeadKind head_kind_from_name(const std::string& name) {
  if (name == "softmax") return ActorHeadKind::kSoftmaxDirect;
  if (name == "dirichlet") return ActorHeadKind::kDirichletCompound;
  throw ConfigError("unknown actor head '" + name + "' (softmax|dirichlet)");
}

void save_policy(const Policy& policy, const std::string& path) {
  nlohmann::json j;
  j["format"] = kPolicyFormatName;
  j["version"] = kPolicyFormatVersion;
  j["name"] = policy.name();
  if (const auto* rp = dynamic_cast<const RandomPolicy*>(&policy)) {
    j["kind"] = "random";
    j["probs"] = rp->probs();
  } else if (const auto* ap = dynamic_cast<const ActorPolicy*>(&policy)) {
    j["kind"] = "actor";
    j["head"] = head_kind_name(ap->head());
    j["layer_sizes"] = ap->params().sizes;
    j["weights"] = ap->params().weights;
    j["biases"] = ap->params().biases;
  } else {
    throw ConfigError("save_policy: unknown policy type");
  }
  std::ofstream os(path);
  if (!os) throw IoError("save_policy: cannot open " + path + " for writing");
  os << j.dump(1) << "\n";
  if (!os) throw IoError("save_policy: write to " + path + " failed");
}

std::unique_ptr<Policy> load_policy(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("load_policy: cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("load_policy: parse error in " + path + " at byte " +
                  std::to_string(e.byte) + ": " + e.what());
  }
  try {
    if (j.value("format", std::string()) != kPolicyFormatName) {
      throw IoError("load_policy: " + path + " is not a " +
                    std::string(kPolicyFormatName) + " file");
    }
    if (j.at("version").get<int>() != kPolicyFormatVersion) {
      throw IoError("load_policy: unsupported version " + j.at("version").dump() +
                    " in " + path);
    }
    const std::string kind = j.at("kind").get<std::string>();
    const std::string name = j.value("name", std::string("policy"));
    if (kind == "random") {
      return std::make_unique<RandomPolicy>(
          name, j.at("probs").get<std::vector<double>>());
    }
    if (kind == "actor") {
      MlpParams p = MlpParams::zeros(j.at("layer_sizes").get<std::vector<int>>());
      auto weights = j.at("weights").get<std::vector<std::vector<double>>>();
      auto biases = j.at("biases").get<std::vector<std::vector<double>>>();
      if (weights.size() != p.weights.size() || biases.size() != p.biases.size()) {
        throw ConfigError("load_policy: layer count mismatch in " + path);
      }
      for (std::size_t l = 0; l < weights.size(); ++l) {
        if (weights[l].size() != p.weights[l].size() ||
            biases[l].size() != p.biases[l].size()) {
          throw ConfigError("load_policy: layer shape mismatch in " + path);
        }
        p.weights[l] = std::move(weights[l]);
        p.biases[l] = std::move(biases[l]);
      }
      return std::make_unique<ActorPolicy>(
          name, std::move(p), head_kind_from_name(j.at("head").get<std::string>()));
    }
    throw ConfigError("load_policy: unknown policy kind '" + kind + "' in " + path);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("load_policy: malformed " + path + ": " + e.what());
  }
}

}  // namespace privrel
