#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace inerton {

/// Base for every error raised by the library. Carries the module and
/// operation names so front ends can emit a structured error record.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string operation, const std::string& message)
      : std::runtime_error(message),
        module_(std::move(module)),
        operation_(std::move(operation)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& operation() const noexcept { return operation_; }

 private:
  std::string module_;
  std::string operation_;
};

/// An input lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configuration is structurally invalid (bad keys, unparsable values,
/// step sizes that cannot resolve the requested dynamics).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to produce a trustworthy result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace inerton
