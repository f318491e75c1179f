#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isores {

// Base for every error the library reports. The CLI maps these onto exit
// codes and the "error.type" field of a report.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class ParameterError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "parameter"; }
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  const char* kind() const noexcept override { return "parse"; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(double residual, std::size_t iterations)
      : Error("solver did not converge after " + std::to_string(iterations) +
              " iterations (relative residual " + std::to_string(residual) + ")"),
        residual_(residual),
        iterations_(iterations) {}
  const char* kind() const noexcept override { return "convergence"; }
  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

// Battery endpoints lie in different components. Not a numeric failure:
// the resistance is +inf.
class InfiniteResistance : public Error {
 public:
  InfiniteResistance() : Error("endpoints are in different components (infinite resistance)") {}
  const char* kind() const noexcept override { return "infinite_resistance"; }
};

// Exact enumeration refused because the graph is above the size gate.
class GateError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "gate"; }
};

class InternalError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "internal"; }
};

}  // namespace isores
