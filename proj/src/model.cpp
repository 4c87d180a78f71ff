#include "privrel/model.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "privrel/errors.hpp"
#include "privrel/rng.hpp"

namespace privrel {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr int kModelFormatVersion = 1;
const char* const kModelFormatName = "privrel-model";

}  // namespace

ObservationModel generate_gaussian_model(const GeneratorSpec& gen) {
  if (!gen.valid()) {
    throw ConfigError("generate_gaussian_model: invalid generator spec");
  }
  const ModelSpec& spec = gen.spec;
  if (spec.n_actions > spec.n_secret) {
    throw UnsupportedRecipeError(
        "generate_gaussian_model: recipe needs n_actions <= n_secret (got " +
        std::to_string(spec.n_actions) + " > " + std::to_string(spec.n_secret) + ")");
  }

  ObservationModel m;
  m.spec = spec;
  m.q.assign(static_cast<std::size_t>(spec.n_actions) * spec.n_secret * spec.n_useful *
                 spec.n_obs,
             0.0);
  m.prior.assign(static_cast<std::size_t>(spec.joint_size()),
                 1.0 / spec.joint_size());

  std::vector<double> grid(spec.n_obs);
  const double step = (gen.grid_high - gen.grid_low) / (spec.n_obs - 1);
  for (int i = 0; i < spec.n_obs; ++i) grid[i] = gen.grid_low + step * i;

  std::mt19937_64 rng(gen.seed);
  for (int a = 0; a < spec.n_actions; ++a) {
    const int distinguished = spec.n_secret - 1 - a;
    for (int s = 0; s < spec.n_secret; ++s) {
      for (int u = 0; u < spec.n_useful; ++u) {
        const double sigma = uniform_in(rng, gen.sigma_low, gen.sigma_high);
        const double mean = (s == distinguished) ? static_cast<double>(u + 1) : 0.0;
        double sum = 0.0;
        for (int z = 0; z < spec.n_obs; ++z) {
          const double d = (grid[z] - mean) / sigma;
          const double v = std::exp(-0.5 * d * d);
          m.q_at(a, s, u, z) = v;
          sum += v;
        }
        for (int z = 0; z < spec.n_obs; ++z) m.q_at(a, s, u, z) /= sum;
      }
    }
  }
  return m;
}

std::string ModelViolation::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::kSpec:
      os << "invalid spec (all counts must be >= 1 and n_obs >= 2)";
      break;
    case Kind::kRowSum:
      os << "row (a=" << action << ",s=" << secret << ",u=" << useful
         << ") sums to " << value << ", expected 1";
      break;
    case Kind::kNegativeEntry:
      os << "q[a=" << action << "][s=" << secret << "][u=" << useful
         << "][z=" << obs << "] = " << value << " is negative";
      break;
    case Kind::kPriorSum:
      os << "prior sums to " << value << ", expected 1";
      break;
    case Kind::kPriorNegative:
      os << "prior(s=" << secret << ",u=" << useful << ") = " << value
         << " is negative";
      break;
  }
  return os.str();
}

std::vector<ModelViolation> validate(const ObservationModel& m) {
  std::vector<ModelViolation> out;
  if (!m.spec.valid()) {
    out.push_back({ModelViolation::Kind::kSpec});
    return out;
  }
  const ModelSpec& spec = m.spec;
  const std::size_t expect_q = static_cast<std::size_t>(spec.n_actions) *
                               spec.n_secret * spec.n_useful * spec.n_obs;
  if (m.q.size() != expect_q ||
      m.prior.size() != static_cast<std::size_t>(spec.joint_size())) {
    out.push_back({ModelViolation::Kind::kSpec});
    return out;
  }
  for (int a = 0; a < spec.n_actions; ++a) {
    for (int s = 0; s < spec.n_secret; ++s) {
      for (int u = 0; u < spec.n_useful; ++u) {
        double sum = 0.0;
        for (int z = 0; z < spec.n_obs; ++z) {
          const double v = m.q_at(a, s, u, z);
          if (v < 0.0) {
            out.push_back(
                {ModelViolation::Kind::kNegativeEntry, a, s, u, z, v});
          }
          sum += v;
        }
        if (std::abs(sum - 1.0) > kRowSumTol) {
          out.push_back({ModelViolation::Kind::kRowSum, a, s, u, -1, sum});
        }
      }
    }
  }
  double psum = 0.0;
  for (int s = 0; s < spec.n_secret; ++s) {
    for (int u = 0; u < spec.n_useful; ++u) {
      const double v = m.prior_at(s, u);
      if (v < 0.0) {
        out.push_back({ModelViolation::Kind::kPriorNegative, -1, s, u, -1, v});
      }
      psum += v;
    }
  }
  if (std::abs(psum - 1.0) > kRowSumTol) {
    out.push_back({ModelViolation::Kind::kPriorSum, -1, -1, -1, -1, psum});
  }
  return out;
}

void save_model(const ObservationModel& m, const std::string& path) {
  nlohmann::json j;
  j["format"] = kModelFormatName;
  j["version"] = kModelFormatVersion;
  j["spec"] = {{"n_secret", m.spec.n_secret},
               {"n_useful", m.spec.n_useful},
               {"n_actions", m.spec.n_actions},
               {"n_obs", m.spec.n_obs}};
  nlohmann::json q = nlohmann::json::array();
  for (int a = 0; a < m.spec.n_actions; ++a) {
    nlohmann::json ja = nlohmann::json::array();
    for (int s = 0; s < m.spec.n_secret; ++s) {
      nlohmann::json js = nlohmann::json::array();
      for (int u = 0; u < m.spec.n_useful; ++u) {
        auto row = m.q_row(a, s, u);
        js.push_back(std::vector<double>(row.begin(), row.end()));
      }
      ja.push_back(std::move(js));
    }
    q.push_back(std::move(ja));
  }
  j["q"] = std::move(q);
  nlohmann::json prior = nlohmann::json::array();
  for (int s = 0; s < m.spec.n_secret; ++s) {
    std::vector<double> row(m.spec.n_useful);
    for (int u = 0; u < m.spec.n_useful; ++u) row[u] = m.prior_at(s, u);
    prior.push_back(std::move(row));
  }
  j["prior"] = std::move(prior);

  std::ofstream os(path);
  if (!os) throw IoError("save_model: cannot open " + path + " for writing");
  os << j.dump(1) << "\n";
  if (!os) throw IoError("save_model: write to " + path + " failed");
}

ObservationModel load_model(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("load_model: cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte carries the offset of the failure.
    throw IoError("load_model: parse error in " + path + " at byte " +
                  std::to_string(e.byte) + ": " + e.what());
  }
  try {
    if (j.value("format", std::string()) != kModelFormatName) {
      throw IoError("load_model: " + path + " is not a " +
                    std::string(kModelFormatName) + " file");
    }
    if (j.at("version").get<int>() != kModelFormatVersion) {
      throw IoError("load_model: unsupported version " +
                    j.at("version").dump() + " in " + path);
    }
    ObservationModel m;
    const auto& spec = j.at("spec");
    m.spec.n_secret = spec.at("n_secret").get<int>();
    m.spec.n_useful = spec.at("n_useful").get<int>();
    m.spec.n_actions = spec.at("n_actions").get<int>();
    m.spec.n_obs = spec.at("n_obs").get<int>();
    if (!m.spec.valid()) {
      throw ConfigError("load_model: invalid spec in " + path);
    }
    m.q.reserve(static_cast<std::size_t>(m.spec.n_actions) * m.spec.n_secret *
                m.spec.n_useful * m.spec.n_obs);
    const auto& q = j.at("q");
    for (int a = 0; a < m.spec.n_actions; ++a) {
      for (int s = 0; s < m.spec.n_secret; ++s) {
        for (int u = 0; u < m.spec.n_useful; ++u) {
          const auto& row = q.at(a).at(s).at(u);
          if (static_cast<int>(row.size()) != m.spec.n_obs) {
            throw ConfigError("load_model: row (a=" + std::to_string(a) +
                              ",s=" + std::to_string(s) + ",u=" + std::to_string(u) +
                              ") has wrong length in " + path);
          }
          for (const auto& v : row) m.q.push_back(v.get<double>());
        }
      }
    }
    const auto& prior = j.at("prior");
    for (int s = 0; s < m.spec.n_secret; ++s) {
      for (int u = 0; u < m.spec.n_useful; ++u) {
        m.prior.push_back(prior.at(s).at(u).get<double>());
      }
    }
    auto violations = validate(m);
    if (!violations.empty()) {
      std::string msg = "load_model: " + path + " violates model invariants:";
      for (const auto& v : violations) msg += "\n  " + v.describe();
      throw ConfigError(msg);
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("load_model: malformed " + path + ": " + e.what());
  }
}

}  // namespace privrel
