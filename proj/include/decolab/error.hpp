#ifndef DECOLAB_ERROR_HPP
#define DECOLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace decolab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A density matrix or propagator left its tolerance band.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Requested observable is undefined for the scenario (e.g. f01 for a diagonal initial state).
class ObservableUnavailable : public Error {
 public:
  using Error::Error;
};

/// Scenario text could not be turned into a Scenario. Carries the offending key and line.
class ScenarioError : public Error {
 public:
  ScenarioError(std::string key, int line, const std::string& what)
      : Error(format(key, line, what)), key_(std::move(key)), line_(line) {}

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  static std::string format(const std::string& key, int line, const std::string& what) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!key.empty()) out += "key '" + key + "': ";
    return out + what;
  }

  std::string key_;
  int line_;
};

}  // namespace decolab

#endif  // DECOLAB_ERROR_HPP
