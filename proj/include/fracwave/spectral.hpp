#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fracwave/errors.hpp"
#include "fracwave/kernel.hpp"

namespace fracwave {

// Uniform periodic grid on [-P/2, P/2) with a node exactly at the crest
// (x = 0) and at the trough (x = -P/2): x_j = -P/2 + j P/N.
struct PeriodicGrid {
  PeriodicGrid(double P_, int N_) : P(P_), N(N_) {
    if (!(P > 0)) throw ConfigError("grid period must be positive");
    if (N < 8 || N % 2 != 0) throw ConfigError("grid size must be even and at least 8");
  }
  double P;
  int N;
  int n() const { return N / 2; }  // cosine-basis dimension is n + 1
  double dx() const { return P / N; }
  double node(int j) const { return -0.5 * P + j * P / N; }
  std::vector<double> nodes() const {
    std::vector<double> x(N);
    for (int j = 0; j < N; ++j) x[j] = node(j);
    return x;
  }
  bool operator==(const PeriodicGrid& o) const { return P == o.P && N == o.N; }
  bool operator!=(const PeriodicGrid& o) const { return !(*this == o); }
};

// Real-valued periodic function sampled at the grid nodes.
struct PeriodicField {
  PeriodicField(PeriodicGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.N)
      throw ConfigError("field length does not match grid size");
  }
  explicit PeriodicField(PeriodicGrid g) : grid(g), values(g.N, 0.0) {}
  PeriodicGrid grid;
  std::vector<double> values;

  // Symmetric about x = 0 under the periodic identification:
  // values[j] == values[(N-j) mod N] to rel_tol.
  bool is_even(double rel_tol = 1e-12) const;
  double max() const;
  double min() const;
  double mean() const;
  double sup_norm() const;
};

// Fourier-multiplier operator on the discrete frequencies 2 pi k / P,
// k = 0..N/2. symbol[0] = 1; strictly decreasing in k.
enum class MultiplierKind { Bessel, DP };
struct MultiplierSpec {
  MultiplierKind kind;
  double s;
  double P = 0;
  int N = 0;
  std::vector<double> symbol;  // at k = 0..N/2

  static MultiplierSpec make(MultiplierKind kind, DispersionParam s, const PeriodicGrid& grid);
};

// Discrete Fourier transform with coefficients ordered k = -N/2 .. N/2-1
// (index i holds frequency k = i - N/2) and normalized so that the k = 0
// coefficient equals the mean: f(x_j) = sum_k fhat_k exp(i 2 pi k x_j / P).
std::vector<std::complex<double>> to_spectrum(const PeriodicField& f);
PeriodicField from_spectrum(const PeriodicGrid& grid, const std::vector<std::complex<double>>& fhat);

// Multiplies each spectral coefficient by symbol[|k|]; real output, evenness
// preserved. Throws GridMismatchError if the multiplier was built for a
// different grid.
PeriodicField apply_multiplier(const PeriodicField& f, const MultiplierSpec& m);

// Spectral differentiation (order 1 or 2). The derivative of the unmatched
// highest mode k = -N/2 is set to zero for odd orders to keep output real.
PeriodicField spectral_derivative(const PeriodicField& f, int order);

// --- even-subspace (cosine) interface ----------------------------------------
//
// Solvers work with coefficient vectors a of length n+1 = N/2+1 representing
// f(x) = a_0 + sum_{k=1}^{n} a_k cos(2 pi k x / P).

std::vector<double> cosine_coeffs(const PeriodicField& f);
PeriodicField field_from_cosine(const PeriodicGrid& grid, const std::vector<double>& a);

// Cosine coefficients of the pointwise product of two cosine-series, computed
// on a 3N/2 zero-padded grid. Product modes above n fold only onto mode n
// itself (the retained band is otherwise alias-free).
std::vector<double> dealiased_product(const PeriodicGrid& grid, const std::vector<double>& a,
                                      const std::vector<double>& b);

// Dense matrix M(c) of the multiplication operator v -> product(c, v) in the
// cosine basis; exactly consistent with dealiased_product (including the
// Nyquist fold), so analytic Jacobians match the residual bilinearly.
Eigen::MatrixXd multiplication_matrix(const PeriodicGrid& grid, const std::vector<double>& c);

// Symbol values at the cosine-mode frequencies 2 pi k / P, k = 0..n.
std::vector<double> cosine_symbol(MultiplierKind kind, DispersionParam s, const PeriodicGrid& grid);

}  // namespace fracwave
