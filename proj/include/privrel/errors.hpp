#ifndef PRIVREL_ERRORS_HPP_
#define PRIVREL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace privrel {

// Base class for everything this library throws deliberately.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid specs, parameters or file contents that violate module invariants.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Requested generator recipe does not cover the given hypothesis counts.
class UnsupportedRecipeError : public ConfigError {
 public:
  explicit UnsupportedRecipeError(const std::string& what) : ConfigError(what) {}
};

// Numerical failures: non-finite network output, impossible observations,
// inconsistent belief transitions.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(what) {}
};

// An observation with zero evidence under the current belief. The environment
// samples observations from the true hypothesis, so this indicates a
// model/belief mismatch rather than ordinary bad luck.
class ImpossibleObservationError : public NumericError {
 public:
  ImpossibleObservationError(int action, int observation, const std::string& what)
      : NumericError(what), action(action), observation(observation) {}
  int action;
  int observation;
};

// realized_info_reward called on a pair of beliefs that cannot be a genuine
// Bayes update (posterior support exceeds prior support).
class InconsistentUpdateError : public NumericError {
 public:
  explicit InconsistentUpdateError(const std::string& what) : NumericError(what) {}
};

// Stepping an environment whose episode has already ended.
class EpisodeFinishedError : public Error {
 public:
  explicit EpisodeFinishedError(const std::string& what) : Error(what) {}
};

// File-level failures: unreadable paths, malformed content, version mismatch.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace privrel

#endif  // PRIVREL_ERRORS_HPP_
