#ifndef LIMITLBM_ERRORS_HPP_
#define LIMITLBM_ERRORS_HPP_

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace limitlbm {

// Invalid physical or numerical parameter (non-positive viscosity, h, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Stencil and grid (or two grids) disagree in dimension or size.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Zero or negative density where a velocity has to be formed.
class DegenerateDensity : public std::runtime_error {
 public:
  explicit DegenerateDensity(const std::string &what)
      : std::runtime_error(what) {}
  DegenerateDensity(const std::string &what, std::array<int, 3> node)
      : std::runtime_error(what + " at node (" + std::to_string(node[0]) +
                           "," + std::to_string(node[1]) + "," +
                           std::to_string(node[2]) + ")"),
        node_(node) {}

  const std::optional<std::array<int, 3>> &node() const { return node_; }

 private:
  std::optional<std::array<int, 3>> node_;
};

// Field norm exceeded the blow-up bound during a run.
class BlowUp : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string &what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          what
                                    : what),
        line_(line) {}

  // 1-based line number, 0 when the error is not tied to a line.
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace limitlbm

#endif  // LIMITLBM_ERRORS_HPP_
