#include "fracwave/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace fracwave {

namespace {

// Process-wide FFTW plan cache, keyed by transform size. Plans are created
// once under a lock (FFTW planning is not thread-safe) with
// FFTW_ESTIMATE | FFTW_UNALIGNED so they can execute on any caller buffer via
// the new-array interface (which is thread-safe).
struct PlanSet {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

const PlanSet& plans_for(int n) {
  static std::mutex m;
  static std::map<int, PlanSet> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<double> real(n);
    std::vector<std::complex<double>> cplx(n / 2 + 1);
    PlanSet p;
    p.r2c = fftw_plan_dft_r2c_1d(n, real.data(), reinterpret_cast<fftw_complex*>(cplx.data()),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.c2r = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(cplx.data()), real.data(),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    it = cache.emplace(n, p).first;
  }
  return it->second;
}

// Forward transform: F_k = sum_j f_j exp(-2 pi i j k / n), k = 0..n/2.
std::vector<std::complex<double>> fft_forward(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<double> in(f);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(plans_for(n).r2c, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

// Inverse of fft_forward up to the factor n: returns sum_k F~_k exp(+2 pi i j k / n)
// over the Hermitian extension of F.
std::vector<double> fft_backward(std::vector<std::complex<double>> F, int n) {
  std::vector<double> out(n);
  fftw_execute_dft_c2r(plans_for(n).c2r, reinterpret_cast<fftw_complex*>(F.data()), out.data());
  return out;
}

double phase(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

bool PeriodicField::is_even(double rel_tol) const {
  const int N = grid.N;
  double scale = sup_norm();
  if (scale == 0) return true;
  for (int j = 1; j < N; ++j) {
    if (std::abs(values[j] - values[(N - j) % N]) > rel_tol * scale) return false;
  }
  return true;
}

double PeriodicField::max() const { return *std::max_element(values.begin(), values.end()); }
double PeriodicField::min() const { return *std::min_element(values.begin(), values.end()); }
double PeriodicField::mean() const {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(grid.N);
}
double PeriodicField::sup_norm() const {
  double m = 0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

MultiplierSpec MultiplierSpec::make(MultiplierKind kind, DispersionParam s, const PeriodicGrid& grid) {
  MultiplierSpec m;
  m.kind = kind;
  m.s = s.s;
  m.P = grid.P;
  m.N = grid.N;
  m.symbol.resize(grid.n() + 1);
  for (int k = 0; k <= grid.n(); ++k) {
    const double xi = 2.0 * M_PI * k / grid.P;
    m.symbol[k] = (kind == MultiplierKind::Bessel) ? bessel_symbol(xi, s) : dp_symbol(xi, s);
  }
  return m;
}

std::vector<double> cosine_symbol(MultiplierKind kind, DispersionParam s, const PeriodicGrid& grid) {
  return MultiplierSpec::make(kind, s, grid).symbol;
}

std::vector<std::complex<double>> to_spectrum(const PeriodicField& f) {
  const int N = f.grid.N;
  const auto F = fft_forward(f.values);
  // Index i holds frequency k = i - N/2; the grid starts at -P/2, which
  // contributes the alternating phase (-1)^k relative to the raw DFT.
  std::vector<std::complex<double>> out(N);
  const double inv = 1.0 / N;
  for (int i = 0; i < N; ++i) {
    const int k = i - N / 2;
    std::complex<double> F_k = (k >= 0) ? F[k] : std::conj(F[-k]);
    out[i] = phase(k) * inv * F_k;
  }
  return out;
}

PeriodicField from_spectrum(const PeriodicGrid& grid, const std::vector<std::complex<double>>& fhat) {
  const int N = grid.N;
  if (static_cast<int>(fhat.size()) != N)
    throw GridMismatchError("spectrum length does not match grid size");
  // Rebuild the half-complex synthesis array; non-Hermitian content (an
  // imaginary component of the underlying field) is discarded by averaging
  // the +k and -k coefficients.
  std::vector<std::complex<double>> C(N / 2 + 1);
  C[0] = fhat[N / 2];
  for (int k = 1; k < N / 2; ++k) {
    C[k] = phase(k) * 0.5 * (fhat[N / 2 + k] + std::conj(fhat[N / 2 - k]));
  }
  C[N / 2] = phase(N / 2) * fhat[0];
  return PeriodicField(grid, fft_backward(std::move(C), N));
}

PeriodicField apply_multiplier(const PeriodicField& f, const MultiplierSpec& m) {
  if (m.P != f.grid.P || m.N != f.grid.N)
    throw GridMismatchError("multiplier was built for a different grid");
  const int N = f.grid.N;
  auto F = fft_forward(f.values);
  for (int k = 0; k <= N / 2; ++k) F[k] *= m.symbol[k];
  auto vals = fft_backward(std::move(F), N);
  for (double& v : vals) v /= N;
  return PeriodicField(f.grid, std::move(vals));
}

PeriodicField spectral_derivative(const PeriodicField& f, int order) {
  if (order != 1 && order != 2) throw DomainError("spectral derivative supports orders 1 and 2");
  const int N = f.grid.N;
  auto F = fft_forward(f.values);
  for (int k = 0; k <= N / 2; ++k) {
    const double w = 2.0 * M_PI * k / f.grid.P;
    if (order == 1) {
      F[k] *= std::complex<double>(0.0, w);
    } else {
      F[k] *= -w * w;
    }
  }
  if (order == 1) F[N / 2] = 0.0;  // unmatched highest mode has no real odd derivative
  auto vals = fft_backward(std::move(F), N);
  for (double& v : vals) v /= N;
  return PeriodicField(f.grid, std::move(vals));
}

std::vector<double> cosine_coeffs(const PeriodicField& f) {
  const int N = f.grid.N;
  const int n = N / 2;
  const auto F = fft_forward(f.values);
  std::vector<double> a(n + 1);
  a[0] = F[0].real() / N;
  for (int k = 1; k < n; ++k) a[k] = 2.0 * phase(k) * F[k].real() / N;
  a[n] = phase(n) * F[n].real() / N;
  return a;
}

PeriodicField field_from_cosine(const PeriodicGrid& grid, const std::vector<double>& a) {
  const int N = grid.N;
  const int n = N / 2;
  if (static_cast<int>(a.size()) != n + 1)
    throw GridMismatchError("cosine coefficient vector does not match grid size");
  std::vector<std::complex<double>> C(n + 1);
  C[0] = a[0];
  for (int k = 1; k < n; ++k) C[k] = phase(k) * 0.5 * a[k];
  C[n] = phase(n) * a[n];
  return PeriodicField(grid, fft_backward(std::move(C), N));
}

std::vector<double> dealiased_product(const PeriodicGrid& grid, const std::vector<double>& a,
                                      const std::vector<double>& b) {
  const int n = grid.n();
  if (static_cast<int>(a.size()) != n + 1 || static_cast<int>(b.size()) != n + 1)
    throw GridMismatchError("cosine coefficient vector does not match grid size");
  const int M = 3 * grid.N / 2;  // padded grid; its resolved band reaches 3n/2
  const int half = M / 2;

  // The padded transforms run on an internal grid starting at 0 (no phase
  // twist), so the lone surviving alias -- product mode 2n landing on mode n
  // (2n == M - n) -- folds with weight +1/2 a_n b_n for every n, matching
  // multiplication_matrix exactly.
  auto pad_values = [&](const std::vector<double>& c) {
    std::vector<std::complex<double>> C(half + 1, 0.0);
    C[0] = c[0];
    for (int k = 1; k <= n; ++k) C[k] = 0.5 * c[k];
    return fft_backward(std::move(C), M);
  };
  const auto va = pad_values(a);
  const auto vb = pad_values(b);
  std::vector<double> vp(M);
  for (int j = 0; j < M; ++j) vp[j] = va[j] * vb[j];
  const auto F = fft_forward(vp);

  std::vector<double> p(n + 1);
  p[0] = F[0].real() / M;
  for (int k = 1; k <= n; ++k) p[k] = 2.0 * F[k].real() / M;
  return p;
}

Eigen::MatrixXd multiplication_matrix(const PeriodicGrid& grid, const std::vector<double>& c) {
  const int n = grid.n();
  if (static_cast<int>(c.size()) != n + 1)
    throw GridMismatchError("cosine coefficient vector does not match grid size");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) M(i, 0) = c[i];
  for (int k = 1; k <= n; ++k) M(0, k) = 0.5 * c[k];
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= n; ++k) {
      const double diff = (i == k) ? 2.0 * c[0] : c[std::abs(i - k)];
      const double sum = (i + k <= n) ? c[i + k] : 0.0;
      M(i, k) = 0.5 * (diff + sum);
    }
  }
  M(n, n) += 0.5 * c[n];  // product mode 2n folds back onto the retained mode n
  return M;
}

}  // namespace fracwave
