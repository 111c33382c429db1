#pragma once

#include <stdexcept>

namespace locgame {

// Bad argument to a library call (out-of-range vertex, invalid probability, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A game participant violated the rules of engagement (oversized probe,
// inconsistent observation, illegal robber move).
struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed experiment configuration or input file.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Request exceeds a hard solver/size limit.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace locgame
