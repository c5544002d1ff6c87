#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace apchemo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, grids or field shapes passed to an operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function (e.g. H at rho >= rho_bar).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Elimination hit a pivot that is numerically zero.
class SingularPivot : public Error {
 public:
  SingularPivot(std::size_t index, double pivot)
      : Error("singular pivot " + std::to_string(pivot) + " at row " + std::to_string(index)),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Iterative procedure (Krylov solve, Picard loop) did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (last residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Stage of a time step, used to locate numerical failures.
enum class StepStage { g_tilde, density_solve, g_recovery, chemo_solve, macro_solve };

const char* to_string(StepStage stage) noexcept;

/// A step produced NaN/Inf or an invalid intermediate state.
class NumericalError : public Error {
 public:
  NumericalError(StepStage stage, std::size_t index, const std::string& detail)
      : Error(std::string("numerical failure in ") + to_string(stage) + " at index " +
              std::to_string(index) + ": " + detail),
        stage_(stage),
        index_(index) {}
  StepStage stage() const noexcept { return stage_; }
  std::size_t index() const noexcept { return index_; }

 private:
  StepStage stage_;
  std::size_t index_;
};

/// A trajectory stopped because one of its steps failed.
class RunAborted : public Error {
 public:
  RunAborted(std::size_t step, const std::string& cause)
      : Error("run aborted at step " + std::to_string(step) + ": " + cause), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace apchemo
