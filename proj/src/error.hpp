#ifndef AUGCACHE_ERROR_HPP
#define AUGCACHE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace augcache {

// Invalid experiment setup: bad spec strings, incompatible algorithm/predictor
// pairings, out-of-range parameters. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file. Carries the 1-based line number when known.
// Maps to exit code 3.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  explicit ParseError(const std::string& msg) : ParseError(msg, 0) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_ = 0;
};

// A state the simulator must never reach: a policy breaking its step contract,
// a metric fed impossible values, misuse of a result object. Maps to exit
// code 4.
class ConsistencyError : public std::logic_error {
public:
  explicit ConsistencyError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace augcache

#endif
