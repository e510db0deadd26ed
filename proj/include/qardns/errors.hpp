// errors.hpp
// Exception taxonomy shared by the library and the command line tool.
//   ConfigError   - a configuration value or file is unusable
//   DataError     - a data file is malformed (carries a line number)
//   ProtocolError - an API was driven out of order (e.g. stepping a
//                   finished episode)
// Plain std::invalid_argument remains the vocabulary for bad arguments
// to low level numeric routines.

#pragma once

#include <stdexcept>
#include <string>

namespace qardns {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class DataError : public std::runtime_error {
 public:
  DataError(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class ProtocolError : public std::logic_error {
 public:
  explicit ProtocolError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qardns
