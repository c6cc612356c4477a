#pragma once

#include <stdexcept>
#include <string>

namespace glr {

// Argument outside an operation's documented domain (orders, empty lists, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Time or parameter outside a curve's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Covariance that is not symmetric positive definite.
class InvalidDistribution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Least-squares fit that cannot be solved (rank-deficient design, too few samples).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed scenario / cache / config file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed data that violates a domain invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad generator or harness configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace glr
