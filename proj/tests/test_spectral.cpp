// Tests for the Fourier-side operators: grid/field plumbing, multiplier
// application, derivatives, cosine-coefficient transforms, the dealiased
// quadratic product, and its Galerkin matrix representation.
//
// The convolution oracle used against apply_multiplier evaluates
// (K_P * f)(x_j) by direct quadrature of the periodic kernel, splitting the
// integrand at the kernel's |x|^(s-1) singularity.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "fracwave/kernel.hpp"
#include "fracwave/spectral.hpp"

using namespace fracwave;

namespace {

double two_pi() { return 2.0 * M_PI; }

// Reference O(n^2) cosine-series product: full convolution of
// sum a_k cos(k th) * sum b_k cos(k th) projected onto modes 0..n, with the
// single surviving alias (mode 2n onto mode n) folded in with weight 1/2.
std::vector<double> reference_product(int n, const std::vector<double>& a,
                                      const std::vector<double>& b) {
  std::vector<double> sum_part(2 * n + 1, 0.0);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) sum_part[i + j] += 0.5 * a[i] * b[j];
  std::vector<double> diff_part(n + 1, 0.0);
  for (int d = 0; d <= n; ++d) {
    double acc = 0.0;
    for (int i = 0; i + d <= n; ++i) acc += a[i + d] * b[i] + (d == 0 ? 0.0 : a[i] * b[i + d]);
    diff_part[d] = 0.5 * acc;
  }
  std::vector<double> p(n + 1);
  for (int k = 0; k <= n; ++k) p[k] = sum_part[k] + diff_part[k];
  p[n] += sum_part[2 * n];
  return p;
}

PeriodicField random_field(const PeriodicGrid& g, unsigned seed, bool even) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = g.n();
  std::vector<double> a(n + 1);
  for (int k = 0; k <= n; ++k) a[k] = u(rng) / (1.0 + k);  // mild decay
  if (even) return field_from_cosine(g, a);
  // Build an odd field from sine modes evaluated directly.
  std::vector<double> v(g.N);
  for (int j = 0; j < g.N; ++j) {
    double x = g.node(j), acc = 0.0;
    for (int k = 1; k < n; ++k) acc += a[k] * std::sin(two_pi() * k * x / g.P);
    v[j] = acc;
  }
  return PeriodicField(g, std::move(v));
}

}  // namespace

TEST_CASE("grid validation and geometry") {
  CHECK_THROWS_AS(PeriodicGrid(0.0, 32), ConfigError);
  CHECK_THROWS_AS(PeriodicGrid(-1.0, 32), ConfigError);
  CHECK_THROWS_AS(PeriodicGrid(1.0, 33), ConfigError);  // odd
  CHECK_THROWS_AS(PeriodicGrid(1.0, 4), ConfigError);   // too small

  PeriodicGrid g(two_pi(), 16);
  CHECK(g.n() == 8);
  CHECK(g.dx() == doctest::Approx(two_pi() / 16).epsilon(1e-15));
  CHECK(g.node(0) == doctest::Approx(-M_PI).epsilon(1e-15));
  CHECK(g.node(8) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g.nodes().size() == 16);
  CHECK(g == PeriodicGrid(two_pi(), 16));
  CHECK(g != PeriodicGrid(two_pi(), 32));
}

TEST_CASE("field statistics and parity detection") {
  PeriodicGrid g(two_pi(), 64);
  std::vector<double> v(g.N);
  for (int j = 0; j < g.N; ++j) v[j] = 2.0 + std::cos(g.node(j));
  PeriodicField f(g, v);
  CHECK(f.mean() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.max() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(f.min() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.sup_norm() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(f.is_even());
  CHECK(random_field(g, 7, true).is_even());
  CHECK_FALSE(random_field(g, 7, false).is_even());
}

TEST_CASE("spectrum round trip is exact to machine precision") {
  PeriodicGrid g(two_pi(), 64);
  for (unsigned seed : {1u, 2u, 3u}) {
    PeriodicField f = random_field(g, seed, seed % 2 == 0);
    auto fhat = to_spectrum(f);
    REQUIRE(fhat.size() == static_cast<size_t>(g.N));
    PeriodicField back = from_spectrum(g, fhat);
    double scale = f.sup_norm();
    for (int j = 0; j < g.N; ++j) CHECK(std::abs(back.values[j] - f.values[j]) <= 1e-12 * scale);
  }
}

TEST_CASE("spectrum layout: mean sits at index N/2 and cos(x) splits evenly") {
  PeriodicGrid g(two_pi(), 32);
  std::vector<double> v(g.N);
  for (int j = 0; j < g.N; ++j) v[j] = 0.75 + std::cos(g.node(j));
  auto fhat = to_spectrum(PeriodicField(g, v));
  const int mid = g.N / 2;
  CHECK(std::abs(fhat[mid] - std::complex<double>(0.75, 0.0)) < 1e-14);
  CHECK(std::abs(fhat[mid + 1] - std::complex<double>(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(fhat[mid - 1] - std::complex<double>(0.5, 0.0)) < 1e-14);
  for (int i = 0; i < g.N; ++i) {
    if (i == mid || i == mid + 1 || i == mid - 1) continue;
    CHECK(std::abs(fhat[i]) < 1e-14);
  }
}

TEST_CASE("multiplier acts diagonally: single mode is scaled by the symbol") {
  PeriodicGrid g(two_pi(), 32);
  DispersionParam s(0.5);
  auto m = MultiplierSpec::make(MultiplierKind::Bessel, s, g);
  REQUIRE(m.symbol.size() == static_cast<size_t>(g.n() + 1));
  CHECK(m.symbol[0] == doctest::Approx(1.0).epsilon(1e-15));

  std::vector<double> v(g.N);
  for (int j = 0; j < g.N; ++j) v[j] = std::cos(g.node(j));
  PeriodicField out = apply_multiplier(PeriodicField(g, v), m);
  // (1 + 1^2)^(-1/4) = 2^(-1/4)
  const double expect = 0.84089641525371454;
  for (int j = 0; j < g.N; ++j)
    CHECK(out.values[j] == doctest::Approx(expect * std::cos(g.node(j))).epsilon(1e-13));

  // Constants are fixed points of both multipliers.
  PeriodicField c(g, std::vector<double>(g.N, 3.25));
  for (auto kind : {MultiplierKind::Bessel, MultiplierKind::DP}) {
    auto spec = MultiplierSpec::make(kind, s, g);
    PeriodicField cc = apply_multiplier(c, spec);
    for (double val : cc.values) CHECK(val == doctest::Approx(3.25).epsilon(1e-14));
  }
}

TEST_CASE("multiplier grid mismatch is rejected") {
  PeriodicGrid g(two_pi(), 32), h(two_pi(), 64), w(1.0, 32);
  auto m = MultiplierSpec::make(MultiplierKind::Bessel, DispersionParam(0.5), g);
  PeriodicField fh(h, std::vector<double>(h.N, 1.0));
  PeriodicField fw(w, std::vector<double>(w.N, 1.0));
  CHECK_THROWS_AS(apply_multiplier(fh, m), GridMismatchError);
  CHECK_THROWS_AS(apply_multiplier(fw, m), GridMismatchError);
}

TEST_CASE("dp symbol table matches 4/(3 + 1/bessel) identity on the grid") {
  PeriodicGrid g(1.0, 64);
  DispersionParam s(0.3);
  auto bessel = cosine_symbol(MultiplierKind::Bessel, s, g);
  auto dp = cosine_symbol(MultiplierKind::DP, s, g);
  for (int k = 0; k <= g.n(); ++k) {
    CHECK(dp[k] == doctest::Approx(4.0 / (3.0 + 1.0 / bessel[k])).epsilon(1e-14));
  }
  CHECK(dp[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("multiplier agrees with direct periodic-kernel quadrature at N=32") {
  // Brute-force convolution oracle: evaluate
  //   (K_P * f)(x_j) = int_0^{P/2} K_P(y) [f(x_j - y) + f(x_j + y)] dy
  // by composite 5-point Gauss-Legendre on a geometric mesh over [delta, P/2],
  // plus a singularity-aware core on [0, delta]: the c_s |y|^(s-1) part is
  // integrated in closed form against the even Taylor expansion of f
  // (2 f(x) + f''(x) y^2, remainder O(delta^(s+4)) < 1e-12), and the
  // continuous remainder K_P - c_s y^(s-1) gets ordinary panels. Kernel
  // values are shared across all output nodes; f is evaluated by exact cosine
  // synthesis. No FFT or symbol formula enters the oracle path.
  const double P = two_pi();
  PeriodicGrid g(P, 32);
  std::vector<double> a(g.n() + 1, 0.0);
  a[0] = 0.4;
  a[1] = 1.0;
  a[2] = -0.35;
  a[3] = 0.12;
  PeriodicField f = field_from_cosine(g, a);
  auto f_eval = [&](double x) {
    double acc = 0.0;
    for (int k = 0; k <= g.n(); ++k) acc += a[k] * std::cos(two_pi() * k * x / P);
    return acc;
  };

  static const double gx[5] = {-0.90617984593866396, -0.53846931010568311, 0.0,
                               0.53846931010568311, 0.90617984593866396};
  static const double gw[5] = {0.23692688505618917, 0.47862867049936647, 0.56888888888888889,
                               0.47862867049936647, 0.23692688505618917};

  auto f_dd = [&](double x) {
    double acc = 0.0;
    for (int k = 1; k <= g.n(); ++k) {
      double w = two_pi() * k / P;
      acc -= a[k] * w * w * std::cos(w * x);
    }
    return acc;
  };

  const double delta = 1e-4;
  for (double sval : {0.3, 0.5, 0.7}) {
    DispersionParam s(sval);
    auto m = MultiplierSpec::make(MultiplierKind::Bessel, s, g);
    PeriodicField lhs = apply_multiplier(f, m);
    const double cs = singular_prefactor(s);

    // Shared quadrature nodes, weights, and kernel values, built once per s.
    // Outer region [delta, P/2]: geometric panels, integrand w * K_P(y).
    // Core [0, delta]: three equal panels, integrand w * (K_P - c_s y^(s-1)).
    std::vector<double> qy, qw, kv;
    const double ratio = std::sqrt(2.0);
    for (double y0 = delta; y0 < 0.5 * P;) {
      double y1 = std::min(y0 * ratio, 0.5 * P);
      double c = 0.5 * (y0 + y1), h = 0.5 * (y1 - y0);
      for (int q = 0; q < 5; ++q) {
        double y = c + h * gx[q];
        double tol = 1e-11 * std::max(1.0, std::pow(y, sval - 1.0));
        qy.push_back(y);
        qw.push_back(gw[q] * h);
        kv.push_back(periodic_kernel(y, P, s, tol).value);
      }
      y0 = y1;
    }
    for (int panel = 0; panel < 3; ++panel) {
      double y0 = delta * panel / 3.0, y1 = delta * (panel + 1) / 3.0;
      double c = 0.5 * (y0 + y1), h = 0.5 * (y1 - y0);
      for (int q = 0; q < 5; ++q) {
        double y = c + h * gx[q];
        double sing = cs * std::pow(y, sval - 1.0);
        double tol = 1e-12 * std::max(1.0, sing);
        qy.push_back(y);
        qw.push_back(gw[q] * h);
        kv.push_back(periodic_kernel(y, P, s, tol).value - sing);
      }
    }

    double err = 0.0;
    for (int j = 0; j < g.N; ++j) {
      const double x = g.node(j);
      double conv = 0.0;
      for (size_t q = 0; q < qy.size(); ++q)
        conv += qw[q] * kv[q] * (f_eval(x - qy[q]) + f_eval(x + qy[q]));
      // Closed-form singular core against the even Taylor expansion of f.
      conv += cs * (2.0 * f_eval(x) * std::pow(delta, sval) / sval +
                    f_dd(x) * std::pow(delta, sval + 2.0) / (sval + 2.0));
      err = std::max(err, std::abs(lhs.values[j] - conv));
    }
    CHECK(err < 1e-8);
  }
}

TEST_CASE("derivatives: parity, exact values on single modes, Nyquist handling") {
  PeriodicGrid g(two_pi(), 64);
  std::vector<double> v(g.N);
  for (int j = 0; j < g.N; ++j) v[j] = std::cos(2.0 * g.node(j));
  PeriodicField f(g, v);

  PeriodicField d1 = spectral_derivative(f, 1);
  PeriodicField d2 = spectral_derivative(f, 2);
  for (int j = 0; j < g.N; ++j) {
    CHECK(d1.values[j] == doctest::Approx(-2.0 * std::sin(2.0 * g.node(j))).epsilon(1e-12));
    CHECK(d2.values[j] == doctest::Approx(-4.0 * std::cos(2.0 * g.node(j))).epsilon(1e-12));
  }
  CHECK_FALSE(d1.is_even());
  CHECK(d2.is_even());
  CHECK_THROWS_AS(spectral_derivative(f, 3), DomainError);
  CHECK_THROWS_AS(spectral_derivative(f, 0), DomainError);

  // The unmatched highest mode has no odd-derivative partner: d/dx of the
  // pure Nyquist field must come back identically zero.
  std::vector<double> ny(g.N);
  for (int j = 0; j < g.N; ++j) ny[j] = (j % 2 == 0) ? 1.0 : -1.0;
  PeriodicField dny = spectral_derivative(PeriodicField(g, ny), 1);
  for (double val : dny.values) CHECK(std::abs(val) < 1e-13);
}

TEST_CASE("multiplier application is smoothing in the mean-zero L2 sense") {
  PeriodicGrid g(two_pi(), 128);
  auto m = MultiplierSpec::make(MultiplierKind::Bessel, DispersionParam(0.5), g);
  PeriodicField f = random_field(g, 11, true);
  PeriodicField out = apply_multiplier(f, m);
  auto l2_mean_free = [&](const PeriodicField& p) {
    double mu = p.mean(), acc = 0.0;
    for (double val : p.values) acc += (val - mu) * (val - mu);
    return std::sqrt(acc);
  };
  CHECK(l2_mean_free(out) < l2_mean_free(f));
  CHECK(out.mean() == doctest::Approx(f.mean()).epsilon(1e-13));
}

TEST_CASE("cosine transform round trip and coefficient extraction") {
  PeriodicGrid g(two_pi(), 32);
  const int n = g.n();
  std::vector<double> a(n + 1, 0.0);
  a[0] = -0.3;
  a[1] = 1.0;
  a[5] = 0.25;
  a[n] = 0.0625;  // exercise the unmatched highest mode
  PeriodicField f = field_from_cosine(g, a);
  for (int j = 0; j < g.N; ++j) {
    double x = g.node(j), expect = 0.0;
    for (int k = 0; k <= n; ++k) expect += a[k] * std::cos(two_pi() * k * x / g.P);
    CHECK(f.values[j] == doctest::Approx(expect).epsilon(1e-13));
  }
  auto back = cosine_coeffs(f);
  REQUIRE(back.size() == a.size());
  for (int k = 0; k <= n; ++k) CHECK(std::abs(back[k] - a[k]) < 1e-14);

  CHECK_THROWS_AS(field_from_cosine(g, std::vector<double>(n, 0.0)), GridMismatchError);
}

TEST_CASE("dealiased product equals the direct cosine convolution") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  // N = 18 gives n = 9, N = 32 gives n = 16: both parities of the highest
  // retained mode exercise the fold consistently.
  for (int N : {18, 32, 64}) {
    PeriodicGrid g(two_pi(), N);
    const int n = g.n();
    std::vector<double> a(n + 1), b(n + 1);
    for (int k = 0; k <= n; ++k) {
      a[k] = u(rng);
      b[k] = u(rng);
    }
    auto fast = dealiased_product(g, a, b);
    auto ref = reference_product(n, a, b);
    double scale = 0.0;
    for (double v : ref) scale = std::max(scale, std::abs(v));
    for (int k = 0; k <= n; ++k) CHECK(std::abs(fast[k] - ref[k]) <= 1e-14 * std::max(1.0, scale));
  }
}

TEST_CASE("product of cosine fields matches pointwise product when unaliased") {
  PeriodicGrid g(two_pi(), 64);
  const int n = g.n();
  std::vector<double> a(n + 1, 0.0), b(n + 1, 0.0);
  a[0] = 0.5;
  a[2] = 1.0;
  b[1] = 2.0;
  b[3] = -0.5;  // max product mode 5 << n, so no fold is active
  auto p = dealiased_product(g, a, b);
  PeriodicField fa = field_from_cosine(g, a), fb = field_from_cosine(g, b);
  PeriodicField fp = field_from_cosine(g, p);
  for (int j = 0; j < g.N; ++j)
    CHECK(fp.values[j] == doctest::Approx(fa.values[j] * fb.values[j]).epsilon(1e-13));
}

TEST_CASE("multiplication matrix represents the dealiased product exactly") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int N : {18, 32}) {
    PeriodicGrid g(two_pi(), N);
    const int n = g.n();
    std::vector<double> c(n + 1), b(n + 1);
    for (int k = 0; k <= n; ++k) {
      c[k] = u(rng);
      b[k] = u(rng);
    }
    Eigen::MatrixXd M = multiplication_matrix(g, c);
    Eigen::VectorXd bv(n + 1);
    for (int k = 0; k <= n; ++k) bv(k) = b[k];
    Eigen::VectorXd mv = M * bv;
    auto p = dealiased_product(g, c, b);
    for (int k = 0; k <= n; ++k) CHECK(mv(k) == doctest::Approx(p[k]).epsilon(1e-12));
    // Symmetry of the underlying product: M(c) b == M(b) c.
    Eigen::MatrixXd Mb = multiplication_matrix(g, b);
    Eigen::VectorXd cv(n + 1);
    for (int k = 0; k <= n; ++k) cv(k) = c[k];
    Eigen::VectorXd mc = Mb * cv;
    for (int k = 0; k <= n; ++k) CHECK(mc(k) == doctest::Approx(p[k]).epsilon(1e-12));
  }
}
