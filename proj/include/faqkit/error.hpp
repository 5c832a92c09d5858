#pragma once

#include <stdexcept>
#include <string>

namespace faqkit {

// Malformed or inconsistent input data. The CLI maps this to exit status 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem failures (missing input, unwritable output).
class IoError : public DataError {
 public:
  using DataError::DataError;
};

// Invalid parameters or missing configuration. The CLI maps this to exit status 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace faqkit
