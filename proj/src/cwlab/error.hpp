#pragma once

#include <stdexcept>
#include <string>

namespace cwlab {

enum class ErrorKind {
  Config,
  Domain,
  Numerical,
  NoPositiveRoot,
  RegimeMismatch,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};
struct NumericalError : Error {
  explicit NumericalError(const std::string& w) : Error(ErrorKind::Numerical, w) {}
};
struct NoPositiveRoot : Error {
  explicit NoPositiveRoot(const std::string& w) : Error(ErrorKind::NoPositiveRoot, w) {}
};
struct RegimeMismatch : Error {
  explicit RegimeMismatch(const std::string& w) : Error(ErrorKind::RegimeMismatch, w) {}
};
struct InternalError : Error {
  explicit InternalError(const std::string& w) : Error(ErrorKind::Internal, w) {}
};

}  // namespace cwlab
