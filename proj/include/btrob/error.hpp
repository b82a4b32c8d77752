#pragma once

#include <stdexcept>
#include <string>

namespace btrob {

/// Base class for all errors raised by the toolkit. `kind()` is a short
/// machine-readable tag used by the CLI error summary.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class CorpusError : public Error {
 public:
  explicit CorpusError(const std::string& message) : Error("corpus", message) {}
};

class AdapterError : public Error {
 public:
  explicit AdapterError(const std::string& message) : Error("adapter", message) {}
};

class MetricError : public Error {
 public:
  explicit MetricError(const std::string& message) : Error("metric", message) {}
};

/// Raised when a robustness metric has an empty domain.
class UndefinedMetricError : public MetricError {
 public:
  using MetricError::MetricError;
};

class EditOpError : public Error {
 public:
  explicit EditOpError(const std::string& message) : Error("editop", message) {}
};

class TrainingError : public Error {
 public:
  TrainingError(const std::string& message, double gradient_norm = 0.0)
      : Error("training", message), gradient_norm_(gradient_norm) {}

  double gradient_norm() const noexcept { return gradient_norm_; }

 private:
  double gradient_norm_;
};

class AuditError : public Error {
 public:
  explicit AuditError(const std::string& message) : Error("audit", message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config", message) {}
};

}  // namespace btrob
