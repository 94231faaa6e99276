#pragma once

#include <stdexcept>
#include <string>

namespace dsg {

/// Broad failure class; maps one-to-one onto the CLI exit codes.
enum class ErrorCategory { Config = 2, Input = 3, Analysis = 4 };

/// Base for every error the library throws. Carries the pipeline stage that
/// raised it so a top-level handler can report "<stage>: <message>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string stage, const std::string& what)
      : std::runtime_error(what), category_(category), stage_(std::move(stage)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& stage() const noexcept { return stage_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
  std::string stage_;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string stage, const std::string& what)
      : Error(ErrorCategory::Config, std::move(stage), what) {}
};

class InputError : public Error {
 public:
  InputError(std::string stage, const std::string& what)
      : Error(ErrorCategory::Input, std::move(stage), what) {}
};

class AnalysisError : public Error {
 public:
  AnalysisError(std::string stage, const std::string& what)
      : Error(ErrorCategory::Analysis, std::move(stage), what) {}
};

// Named failures. Each is a distinct type so callers can catch precisely.

class IoError : public InputError {
 public:
  explicit IoError(const std::string& what) : InputError("ingest", what) {}
};

class MissingServer : public InputError {
 public:
  explicit MissingServer(const std::string& object)
      : InputError("ingest", "no server component derivable from object '" + object + "'") {}
};

class InsufficientData : public AnalysisError {
 public:
  explicit InsufficientData(const std::string& what) : AnalysisError("popularity", what) {}
};

class InvalidWindow : public ConfigError {
 public:
  explicit InvalidWindow(const std::string& what) : ConfigError("windowing", what) {}
};

class GranularityMismatch : public ConfigError {
 public:
  explicit GranularityMismatch(const std::string& what) : ConfigError("graph", what) {}
};

class NoEdges : public AnalysisError {
 public:
  NoEdges() : AnalysisError("metrics", "graph has no edges; path length undefined") {}
};

class TooManyEdges : public ConfigError {
 public:
  explicit TooManyEdges(const std::string& what) : ConfigError("baseline", what) {}
};

class UndefinedRatio : public AnalysisError {
 public:
  explicit UndefinedRatio(const std::string& what) : AnalysisError("baseline", what) {}
};

class NoValidWindows : public AnalysisError {
 public:
  explicit NoValidWindows(const std::string& what) : AnalysisError("aggregate", what) {}
};

class InvalidConfig : public ConfigError {
 public:
  explicit InvalidConfig(const std::string& what) : ConfigError("synth", what) {}
};

}  // namespace dsg
