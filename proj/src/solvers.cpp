#include "fracwave/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracwave {

namespace {

std::vector<double> bessel_table(const PeriodicGrid& grid, double s) {
  DispersionParam sp(s);
  std::vector<double> lam(grid.n() + 1);
  for (int k = 0; k <= grid.n(); ++k) lam[k] = bessel_symbol(2.0 * M_PI * k / grid.P, sp);
  return lam;
}

}  // namespace

void validate_spec(const ProblemSpec& spec) {
  DispersionParam check(spec.s);  // throws DomainError outside (0,1)
  (void)check;
  if (!(spec.P > 0)) throw ConfigError("period must be positive");
  if (spec.kind == EquationKind::FKDV && spec.kappa != 0.0)
    throw ConfigError("the fKdV normalization fixes kappa = 0");
}

std::pair<double, double> fdp_constant_states(double mu, double kappa) {
  const double disc = mu * mu + 8.0 * kappa;
  if (disc < 0.0)
    throw NoRealConstantsError("no real constant states: mu^2 + 8 kappa < 0");
  const double root = std::sqrt(disc);
  return {(mu - root) / 4.0, (mu + root) / 4.0};
}

PeriodicField residual_fkdv(const PeriodicField& phi, double mu, DispersionParam s) {
  const PeriodicGrid& g = phi.grid;
  auto a = cosine_coeffs(phi);
  auto lam = bessel_table(g, s.s);
  auto p = dealiased_product(g, a, a);
  std::vector<double> r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = mu * a[k] - 0.5 * p[k] - lam[k] * a[k];
  return field_from_cosine(g, r);
}

PeriodicField residual_fdp(const PeriodicField& phi, double mu, double kappa, DispersionParam s) {
  const PeriodicGrid& g = phi.grid;
  auto a = cosine_coeffs(phi);
  auto lam = bessel_table(g, s.s);
  auto p = dealiased_product(g, a, a);
  std::vector<double> r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = mu * a[k] - 0.5 * p[k] - 1.5 * lam[k] * p[k];
  r[0] += kappa;
  return field_from_cosine(g, r);
}

PeriodicField residual_fdp_linearized(const PeriodicField& phi, double mu, double kappa,
                                      DispersionParam s) {
  const PeriodicGrid& g = phi.grid;
  auto a = cosine_coeffs(phi);
  auto dp = cosine_symbol(MultiplierKind::DP, s, g);
  auto p = dealiased_product(g, a, a);
  std::vector<double> r(a.size());
  for (size_t k = 0; k < a.size(); ++k)
    r[k] = -mu * a[k] + 0.5 * p[k] + 0.75 * mu * dp[k] * a[k];
  r[0] -= 0.25 * kappa;
  return field_from_cosine(g, r);
}

SteadyProblem::SteadyProblem(const ProblemSpec& spec, const PeriodicGrid& grid)
    : spec_(spec), grid_(grid), lambda_(bessel_table(grid, spec.s)) {
  validate_spec(spec);
}

std::vector<double> SteadyProblem::residual(const std::vector<double>& a, double mu) const {
  auto p = dealiased_product(grid_, a, a);
  std::vector<double> r(a.size());
  if (spec_.kind == EquationKind::FKDV) {
    for (size_t k = 0; k < a.size(); ++k) r[k] = mu * a[k] - 0.5 * p[k] - lambda_[k] * a[k];
  } else {
    for (size_t k = 0; k < a.size(); ++k) r[k] = mu * a[k] - 0.5 * p[k] - 1.5 * lambda_[k] * p[k];
    r[0] += spec_.kappa;
  }
  return r;
}

std::vector<double> SteadyProblem::jacobian_apply(const std::vector<double>& a, double mu,
                                                  const std::vector<double>& v) const {
  auto p = dealiased_product(grid_, a, v);
  std::vector<double> out(v.size());
  if (spec_.kind == EquationKind::FKDV) {
    for (size_t k = 0; k < v.size(); ++k) out[k] = mu * v[k] - p[k] - lambda_[k] * v[k];
  } else {
    for (size_t k = 0; k < v.size(); ++k) out[k] = mu * v[k] - p[k] - 3.0 * lambda_[k] * p[k];
  }
  return out;
}

Eigen::MatrixXd SteadyProblem::jacobian(const std::vector<double>& a, double mu) const {
  const int m = dim();
  Eigen::MatrixXd J = multiplication_matrix(grid_, a);
  if (spec_.kind == EquationKind::FKDV) {
    J = -J;
    for (int i = 0; i < m; ++i) J(i, i) += mu - lambda_[i];
  } else {
    for (int i = 0; i < m; ++i) J.row(i) *= -(1.0 + 3.0 * lambda_[i]);
    for (int i = 0; i < m; ++i) J(i, i) += mu;
  }
  return J;
}

std::vector<double> SteadyProblem::mu_derivative(const std::vector<double>& a) const { return a; }

double SteadyProblem::residual_grid_norm(const std::vector<double>& a, double mu) const {
  return field_from_cosine(grid_, residual(a, mu)).sup_norm();
}

SolutionPoint SteadyProblem::make_point(const std::vector<double>& a, double mu) const {
  PeriodicField phi = field_from_cosine(grid_, a);
  SolutionPoint pt{phi, mu, residual_grid_norm(a, mu), mu - phi.max(), a};
  return pt;
}

Eigen::MatrixXd jacobian_fkdv(const PeriodicField& phi, double mu, DispersionParam s) {
  ProblemSpec spec{EquationKind::FKDV, s.s, phi.grid.P, 0.0};
  return SteadyProblem(spec, phi.grid).jacobian(cosine_coeffs(phi), mu);
}

Eigen::MatrixXd jacobian_fdp(const PeriodicField& phi, double mu, double kappa,
                             DispersionParam s) {
  ProblemSpec spec{EquationKind::FDP, s.s, phi.grid.P, kappa};
  return SteadyProblem(spec, phi.grid).jacobian(cosine_coeffs(phi), mu);
}

SolutionPoint newton_solve(const ProblemSpec& spec, const PeriodicField& phi0, double mu,
                           const NewtonOptions& opts) {
  validate_spec(spec);
  if (!phi0.is_even(1e-10)) throw DomainError("Newton seed must be an even field");
  SteadyProblem prob(spec, phi0.grid);
  const int m = prob.dim();
  std::vector<double> a = cosine_coeffs(phi0);
  const double tol = opts.tol_rel * std::max(1.0, std::abs(mu));

  double nrm = prob.residual_grid_norm(a, mu);
  for (int it = 0; it < opts.max_iter; ++it) {
    if (nrm < tol) return prob.make_point(a, mu);

    Eigen::MatrixXd J = prob.jacobian(a, mu);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    if (lu.rcond() < 1.0 / opts.condition_cap)
      throw SingularJacobianError("Jacobian condition estimate exceeds cap");
    Eigen::VectorXd r(m);
    for (int k = 0; k < m; ++k) r(k) = 0.0;
    {
      auto rv = prob.residual(a, mu);
      for (int k = 0; k < m; ++k) r(k) = rv[k];
    }
    Eigen::VectorXd d = lu.solve(-r);

    double lambda = 1.0;
    bool improved = false;
    std::vector<double> a_next(m);
    double nrm_next = 0.0;
    for (int bt = 0; bt <= opts.max_backtrack; ++bt) {
      for (int k = 0; k < m; ++k) a_next[k] = a[k] + lambda * d(k);
      nrm_next = prob.residual_grid_norm(a_next, mu);
      if (nrm_next < nrm) {
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved)
      throw NoConvergenceError("Newton line search stalled", it, nrm);
    a = a_next;
    nrm = nrm_next;
  }
  if (nrm < tol) return prob.make_point(a, mu);
  throw NoConvergenceError("Newton did not reach tolerance", opts.max_iter, nrm);
}

SolutionPoint bootstrap_iterate(const ProblemSpec& spec, const PeriodicField& phi0, double mu,
                                double kappa) {
  validate_spec(spec);
  if (spec.kind == EquationKind::FKDV && kappa != 0.0)
    throw ConfigError("the fKdV normalization fixes kappa = 0");
  const PeriodicGrid& g = phi0.grid;
  DispersionParam s(spec.s);
  auto m = MultiplierSpec::make(MultiplierKind::Bessel, s, g);
  SteadyProblem prob(spec, g);

  const double tol = 1e-12 * std::max(1.0, std::abs(mu));
  const int max_iter = 20000;
  PeriodicField phi = phi0;
  for (int it = 0; it < max_iter; ++it) {
    PeriodicField conv = [&] {
      if (spec.kind == EquationKind::FKDV) return apply_multiplier(phi, m);
      PeriodicField sq(g, phi.values);
      for (double& v : sq.values) v *= v;
      return apply_multiplier(sq, m);
    }();
    std::vector<double> next(g.N);
    for (int j = 0; j < g.N; ++j) {
      const double rad = (spec.kind == EquationKind::FKDV)
                             ? mu * mu - 2.0 * conv.values[j]
                             : mu * mu + 2.0 * kappa - 3.0 * conv.values[j];
      if (rad < 0.0)
        throw NegativeRadicandError("bootstrap radicand negative at node " + std::to_string(j),
                                    j);
      next[j] = mu - std::sqrt(rad);
    }
    double diff = 0.0;
    for (int j = 0; j < g.N; ++j) diff = std::max(diff, std::abs(next[j] - phi.values[j]));
    phi = PeriodicField(g, std::move(next));
    if (diff < tol) return prob.make_point(cosine_coeffs(phi), mu);
  }
  throw NoConvergenceError("bootstrap iteration did not settle", max_iter, 0.0);
}

}  // namespace fracwave
