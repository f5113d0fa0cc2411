#ifndef PLATE_ECHO_ERROR_HPP
#define PLATE_ECHO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace plate_echo {

// Error categories map one-to-one onto CLI exit codes (see cli.hpp).

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file; reported like a configuration error.
struct FormatError : ConfigError {
  using ConfigError::ConfigError;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace plate_echo

#endif  // PLATE_ECHO_ERROR_HPP
