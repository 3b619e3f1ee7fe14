#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

// Process exit codes used by the CLI; library errors map onto these.
enum class ExitCode : int {
  Ok = 0,
  Failure = 1,          // generic failure (e.g. diagnose found failing checks)
  ConfigError = 2,      // invalid configuration or arguments
  Inadmissible = 3,     // requested mode outside the admissible window
  MuBound = 4,          // branch terminated by a wave-speed bound
  NoConvergence = 5,    // iteration failed to converge
};

struct Error : std::runtime_error {
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode exit_code() const { return code_; }

 private:
  ExitCode code_;
};

// Invalid parameter or configuration value.
struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ExitCode::ConfigError, what) {}
};

// Function evaluated outside its mathematical domain.
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ExitCode::ConfigError, what) {}
};

// Kernel evaluation requested exactly at the singular point x = 0.
struct SingularPointError : Error {
  explicit SingularPointError(const std::string& what) : Error(ExitCode::ConfigError, what) {}
};

// Adaptive quadrature could not meet the requested tolerance within budget.
struct ToleranceUnreachableError : Error {
  explicit ToleranceUnreachableError(const std::string& what) : Error(ExitCode::NoConvergence, what) {}
};

// Two fields/operators built on different grids were combined.
struct GridMismatchError : Error {
  explicit GridMismatchError(const std::string& what) : Error(ExitCode::ConfigError, what) {}
};

// Newton or fixed-point iteration did not converge.
struct NoConvergenceError : Error {
  NoConvergenceError(const std::string& what, int iterations, double last_norm)
      : Error(ExitCode::NoConvergence, what), iterations(iterations), last_norm(last_norm) {}
  int iterations;
  double last_norm;
};

// Jacobian condition estimate exceeded the cap.
struct SingularJacobianError : Error {
  explicit SingularJacobianError(const std::string& what) : Error(ExitCode::NoConvergence, what) {}
};

// Fixed-point iterate left the admissible set (square-root argument went negative).
struct NegativeRadicandError : Error {
  NegativeRadicandError(const std::string& what, int node) : Error(ExitCode::NoConvergence, what), node(node) {}
  int node;
};

// Solution left the admissible set (crest reached or passed the wave speed).
struct InadmissiblePointError : Error {
  explicit InadmissiblePointError(const std::string& what) : Error(ExitCode::NoConvergence, what) {}
};

// Requested bifurcation mode violates the admissibility window.
struct InadmissibleModeError : Error {
  explicit InadmissibleModeError(const std::string& what) : Error(ExitCode::Inadmissible, what) {}
};

// Scalar root-finder could not bracket a root.
struct NoRootError : Error {
  explicit NoRootError(const std::string& what) : Error(ExitCode::NoConvergence, what) {}
};

// Constant-state equation has no real solutions.
struct NoRealConstantsError : Error {
  explicit NoRealConstantsError(const std::string& what) : Error(ExitCode::ConfigError, what) {}
};

// Exponent-fit window contains too few grid nodes.
struct WindowTooSmallError : Error {
  explicit WindowTooSmallError(const std::string& what) : Error(ExitCode::ConfigError, what) {}
};

// Unreadable or version-mismatched persisted file.
struct FormatError : Error {
  explicit FormatError(const std::string& what) : Error(ExitCode::ConfigError, what) {}
};

}  // namespace fracwave
