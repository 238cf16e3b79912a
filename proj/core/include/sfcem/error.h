#ifndef SFCEM_ERROR_H_
#define SFCEM_ERROR_H_

#include <stdexcept>
#include <string>

namespace sfcem {

// Base class for every error raised by the library. `kind()` is the stable
// machine-readable tag used in the CLI's error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Invalid construction parameters or configuration documents. The message
// always starts with the offending field name.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& m) : Error("config_error", m) {}
};

class LookupError : public Error {
 public:
  explicit LookupError(const std::string& m) : Error("lookup_error", m) {}
};

class GenerationError : public Error {
 public:
  explicit GenerationError(const std::string& m)
      : Error("generation_error", m) {}
};

class RoutingError : public Error {
 public:
  explicit RoutingError(const std::string& m) : Error("routing_error", m) {}
};

class MalformedActionError : public Error {
 public:
  explicit MalformedActionError(const std::string& m)
      : Error("malformed_action", m) {}
};

class EvaluationError : public Error {
 public:
  explicit EvaluationError(const std::string& m)
      : Error("evaluation_error", m) {}
};

class FilterError : public Error {
 public:
  explicit FilterError(const std::string& m) : Error("filter_error", m) {}
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& m, double combinations)
      : Error("budget_exceeded", m), combinations_(combinations) {}
  double combinations() const { return combinations_; }

 private:
  double combinations_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error("io_error", m) {}
};

}  // namespace sfcem

#endif  // SFCEM_ERROR_H_
