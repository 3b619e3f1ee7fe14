#pragma once

#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/report.hpp"

namespace fracwave {

// Dispersion parameter s of the nonlocal operator; valid range is the open
// interval (0, 1).
struct DispersionParam {
  explicit DispersionParam(double s_) : s(s_) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("dispersion parameter s must lie in (0, 1)");
  }
  double s;
};

// --- Fourier multiplier symbols ---------------------------------------------

// Symbol of the smoothing operator: <xi>^{-s} = (1 + xi^2)^{-s/2}.
// Strictly decreasing in |xi|, range (0, 1], value 1 at xi = 0.
double bessel_symbol(double xi, DispersionParam s);

// Derived symbol m(xi) = 4 / (3 + <xi>^{s}) of the operator that linearizes
// the nonlocal term of the second model equation. m(0) = 1, strictly
// decreasing, -> 0 as |xi| -> infinity.
double dp_symbol(double xi, DispersionParam s);

// --- Convolution kernel ------------------------------------------------------

// A single kernel evaluation with a quadrature-truncation error bound.
struct KernelEval {
  double x = 0;
  double value = 0;
  double abs_error_bound = 0;
};

// K_s(x): the convolution kernel of the smoothing operator, evaluated from its
// integral representation
//   K_s(x) = 1/(sqrt(4 pi) Gamma(s/2)) * Int_0^inf exp(-t - x^2/(4t)) t^{(s-3)/2} dt
// by adaptive Gauss-Legendre quadrature (endpoint substitution t = u^2 on
// (0,1], truncated exponential tail on [1, inf)). Even in x; strictly
// positive. Throws SingularPointError at x = 0, ToleranceUnreachableError if
// the panel budget is exhausted.
KernelEval bessel_kernel(double x, DispersionParam s, double tol = 1e-10);

// Prefactor of the kernel's singular part: the limit of K_s(x) |x|^{1-s} as
// x -> 0, extracted by Richardson extrapolation over x = 2^{-k}. Cached per s.
double singular_prefactor(DispersionParam s);

// Split of the kernel near the origin: K_s(x) = c_s |x|^{s-1} + h_s(x), with
// h_s bounded (finite limit as x -> 0). Valid for 0 < |x| < 1.
struct SingularSplit {
  double c_s = 0;
  double h_s_at_x = 0;
};
SingularSplit singular_split(double x, DispersionParam s);

// Periodization K_{P,s}(x) = sum_n K_s(x + nP), truncated where the summands'
// exponential decay makes the tail smaller than tol. Even and P-periodic;
// x must lie in [-P/2, P/2], x != 0.
KernelEval periodic_kernel(double x, double P, DispersionParam s, double tol = 1e-10);

// Numerical mass Int_{-R}^{R} K_s(x) dx (the symbol value at frequency 0 is 1,
// so this tends to 1 as R grows; R >= 40 puts the tail below 1e-17).
// The integrable |x|^{s-1} endpoint singularity is removed by substitution.
double kernel_mass(DispersionParam s, double R = 40.0, double tol = 1e-8);

// Sign-pattern certification of derivatives: checks (-1)^n d^n/dx^n K_s >= 0
// for n = 0..max_order (max 4) at every x in grid, via centered finite
// differences with step h = x/10. Reports one check per order with the
// minimum signed margin over the grid.
DiagnosticsReport certify_complete_monotonicity(DispersionParam s, int max_order,
                                                const std::vector<double>& grid);

}  // namespace fracwave
