#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace netmaint {

/// Base of every error thrown by the library. `category()` is a short
/// machine-parsable tag the CLI prints in front of the message.
class Error : public std::runtime_error {
 public:
  Error(std::string_view category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  std::string_view category() const noexcept { return category_; }

 private:
  std::string_view category_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse", what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error("validation", what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error("dimension", what) {}
};

class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(const std::string& what) : Error("singular", what) {}
};

class InfeasiblePriceError : public Error {
 public:
  explicit InfeasiblePriceError(const std::string& what) : Error("infeasible-price", what) {}
};

class UnboundedResponseError : public Error {
 public:
  explicit UnboundedResponseError(const std::string& what) : Error("unbounded", what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error("convergence", what) {}
};

class ModelInvalidError : public Error {
 public:
  explicit ModelInvalidError(const std::string& what) : Error("model-invalid", what) {}
};

class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what) : Error("infeasible", what) {}
};

class SizeError : public Error {
 public:
  explicit SizeError(const std::string& what) : Error("size", what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io", what) {}
};

}  // namespace netmaint
