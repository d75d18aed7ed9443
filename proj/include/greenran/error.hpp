#pragma once

#include <stdexcept>
#include <string>

namespace greenran {

// Invalid scenario configuration. The message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data (traces, load files, Q-table artifacts) that cannot be used.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation called on an object in the wrong state, e.g. stepping a
// finished episode.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace greenran
