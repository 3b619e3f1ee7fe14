#pragma once

// Steady-state residuals, Jacobians, and solvers for the periodic traveling
// waves: a damped Newton iteration at fixed wave speed, and the square-root
// bootstrap fixed-point map used as a refiner near the highest wave.

#include <vector>

#include <Eigen/Dense>

#include "fracwave/errors.hpp"
#include "fracwave/kernel.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave {

enum class EquationKind { FKDV, FDP };

// Which steady problem to solve. For FKDV the inhomogeneity is fixed to zero
// by the Galilean normalization; a nonzero kappa is rejected.
struct ProblemSpec {
  EquationKind kind = EquationKind::FKDV;
  double s = 0.5;
  double P = 2.0 * 3.14159265358979323846;
  double kappa = 0.0;
};

// Throws ConfigError/DomainError when the spec is not usable.
void validate_spec(const ProblemSpec& spec);

// A converged (or candidate) point on a solution branch. `coeffs` carries the
// exact cosine-coefficient state used by the solvers; `phi` is its synthesis
// on the grid. crest_gap = mu - max(phi) measures the distance to the cusped
// extreme wave.
struct SolutionPoint {
  PeriodicField phi;
  double mu = 0.0;
  double residual_norm = 0.0;
  double crest_gap = 0.0;
  std::vector<double> coeffs;
};

struct NewtonOptions {
  double tol_rel = 1e-11;    // stop when sup|residual| < tol_rel * max(1, |mu|)
  int max_iter = 30;
  int max_backtrack = 10;    // halvings of the Newton step in the line search
  double condition_cap = 1e14;  // reject Jacobians with estimated cond beyond this
};

// Nodewise residual forms on the grid (quadratic terms dealiased).
//   fKdV:  mu phi - phi^2/2 - B phi            (B: Bessel multiplier)
//   fDP:   mu phi - phi^2/2 - (3/2) B phi^2 + kappa
//   fDP linearized: -mu phi + phi^2/2 + (3/4) mu D phi - kappa/4
//                                               (D: rational DP multiplier)
// The fDP forms vanish together: R_fdp = -(1 + 3B) R_linearized exactly.
PeriodicField residual_fkdv(const PeriodicField& phi, double mu, DispersionParam s);
PeriodicField residual_fdp(const PeriodicField& phi, double mu, double kappa, DispersionParam s);
PeriodicField residual_fdp_linearized(const PeriodicField& phi, double mu, double kappa,
                                      DispersionParam s);

// Dense Jacobians in the cosine basis (rows/cols 0..N/2).
Eigen::MatrixXd jacobian_fkdv(const PeriodicField& phi, double mu, DispersionParam s);
Eigen::MatrixXd jacobian_fdp(const PeriodicField& phi, double mu, double kappa, DispersionParam s);

// Coefficient-space assembly of one steady problem on one grid, shared by the
// fixed-mu Newton solver and the arclength continuation. All vectors have
// length grid.n()+1 (cosine coefficients).
class SteadyProblem {
 public:
  SteadyProblem(const ProblemSpec& spec, const PeriodicGrid& grid);

  const ProblemSpec& spec() const { return spec_; }
  const PeriodicGrid& grid() const { return grid_; }
  int dim() const { return grid_.n() + 1; }
  // Bessel symbol table lambda_k = <2 pi k / P>^{-s}, k = 0..n.
  const std::vector<double>& symbol() const { return lambda_; }

  std::vector<double> residual(const std::vector<double>& a, double mu) const;
  // Directional derivative of the residual: v -> dR/dphi[a, mu] v.
  std::vector<double> jacobian_apply(const std::vector<double>& a, double mu,
                                     const std::vector<double>& v) const;
  Eigen::MatrixXd jacobian(const std::vector<double>& a, double mu) const;
  // dR/dmu = phi (as coefficients).
  std::vector<double> mu_derivative(const std::vector<double>& a) const;
  // Sup-norm of the residual over the grid nodes (the Newton stopping norm).
  double residual_grid_norm(const std::vector<double>& a, double mu) const;

  SolutionPoint make_point(const std::vector<double>& a, double mu) const;

 private:
  ProblemSpec spec_;
  PeriodicGrid grid_;
  std::vector<double> lambda_;
};

// Damped Newton iteration at fixed mu. Throws NoConvergenceError when the
// line search stalls or max_iter is exhausted, SingularJacobianError when the
// condition estimate exceeds opts.condition_cap.
SolutionPoint newton_solve(const ProblemSpec& spec, const PeriodicField& phi0, double mu,
                           const NewtonOptions& opts = NewtonOptions());

// Square-root bootstrap map, minus branch:
//   fKdV: phi <- mu - sqrt(mu^2 - 2 B phi)
//   fDP:  phi <- mu - sqrt(mu^2 + 2 kappa - 3 B phi^2)
// Iterated pointwise on the grid until successive sup-norm differences fall
// below 1e-12 * max(1, |mu|). Throws NegativeRadicandError(node) when an
// iterate leaves the admissible set, NoConvergenceError on stall.
SolutionPoint bootstrap_iterate(const ProblemSpec& spec, const PeriodicField& phi0, double mu,
                                double kappa);

// Constant states gamma_-(mu,kappa) <= gamma_+(mu,kappa) of the fDP equation:
// roots of 2 g^2 - mu g - kappa = 0. Throws NoRealConstantsError when
// mu^2 + 8 kappa < 0.
std::pair<double, double> fdp_constant_states(double mu, double kappa);

}  // namespace fracwave
