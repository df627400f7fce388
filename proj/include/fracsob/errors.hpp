#ifndef FRACSOB_ERRORS_HPP
#define FRACSOB_ERRORS_HPP

#include <stdexcept>

namespace fracsob {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter outside the admissible range of an operation (e.g. beta not in (0,1)).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Grid/domain mismatch: empty intersection, misaligned boxes, too few nodes.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Closed form evaluated at one of its singularities.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Sampled data does not decay at the grid boundary (strict transforms only).
class DecayError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or manifest.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracsob

#endif  // FRACSOB_ERRORS_HPP
