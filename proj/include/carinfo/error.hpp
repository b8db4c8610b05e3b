#pragma once

#include <stdexcept>
#include <string>

namespace carinfo {

/// Base for every error raised by the library. The CLI maps the concrete
/// subclasses onto exit codes, so throw the most specific one available.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter outside the mathematical domain of a function (p = 0, a <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Result would overflow to infinity; carries the offending argument in the message.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data (files, graphs, counts).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Invalid sampler configuration (e.g. burn-in >= iterations).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Caller asked for something the object does not carry.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Runtime failure inside an MCMC kernel.
class SamplerError : public Error {
 public:
  using Error::Error;
};

}  // namespace carinfo
