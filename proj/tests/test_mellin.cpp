#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "friedrichs/errors.hpp"
#include "friedrichs/mellin.hpp"

using namespace friedrichs;
using namespace friedrichs::mellin;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const double kSqrt2OverPi = std::sqrt(2.0 / kPi);
}  // namespace

TEST_CASE("closed-form symbol reference values") {
  // 30-digit references for the cosine and sine kernels.
  const Complex zc = mellin_symbol_bessel(-0.5, 0.5, Complex(0.7, 0.3));
  CHECK(zc.real() == doctest::Approx(-1.640607687046266225).epsilon(1e-12));
  CHECK(zc.imag() == doctest::Approx(1.881159485233302826).epsilon(1e-12));
  const Complex zs = mellin_symbol_bessel(0.5, 0.5, Complex(0.7, 0.3));
  CHECK(zs.real() == doctest::Approx(1.316851672033209659).epsilon(1e-12));
  CHECK(zs.imag() == doctest::Approx(0.297249630915277223).epsilon(1e-12));
  const Complex wc = mellin_symbol_bessel(-0.5, 0.5, Complex(1.0, 2.0));
  CHECK(wc.real() == doctest::Approx(-0.026173816033269043).epsilon(1e-11));
  CHECK(wc.imag() == doctest::Approx(0.484364582728047336).epsilon(1e-11));
}

TEST_CASE("quadrature symbol agrees with the closed form") {
  const KernelSpec cosk = KernelSpec::cosine();
  const KernelSpec sink = KernelSpec::sine();
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> re(0.15, 3.0);
  std::uniform_real_distribution<double> im(-4.0, 4.0);
  for (int i = 0; i < 20; ++i) {
    Complex z(re(rng), im(rng));
    // keep away from the pole lines Re z = r_n + 1/2
    if (std::abs(std::fmod(z.real() - 0.5, 2.0)) < 0.05) z += 0.1;
    const Complex qc = mellin_symbol_quadrature(cosk, z);
    const Complex cc = mellin_symbol_bessel(-0.5, 0.5, z);
    CHECK(std::abs(qc - cc) < 1e-6 * (1.0 + std::abs(cc)));
    if (std::abs(std::fmod(z.real() - 1.5, 2.0)) < 0.05) z += 0.1;
    const Complex qs = mellin_symbol_quadrature(sink, z);
    const Complex cs = mellin_symbol_bessel(0.5, 0.5, z);
    CHECK(std::abs(qs - cs) < 1e-6 * (1.0 + std::abs(cs)));
  }
}

TEST_CASE("quadrature symbol error paths") {
  const KernelSpec cosk = KernelSpec::cosine();
  CHECK_THROWS_AS(mellin_symbol_quadrature(cosk, Complex(0.5, 1.0)),
                  PoleProximityError);
  // Tabulated kernel: band ends at remainder_exponent + 1/2.
  std::vector<double> t, v;
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.01 * (i + 1);
    t.push_back(x);
    v.push_back(std::exp(-x));
  }
  KernelExpansion exp_terms;
  exp_terms.terms = {{0.0, 1.0}, {1.0, -1.0}};
  exp_terms.remainder_exponent = 2.0;
  const KernelSpec tab = KernelSpec::tabulated(t, v, exp_terms);
  CHECK_THROWS_AS(mellin_symbol_quadrature(tab, Complex(3.0, 0.0)), BandError);
}

TEST_CASE("residues at the symbol poles equal minus the expansion coefficients") {
  const KernelSpec cosk = KernelSpec::cosine();
  const KernelSpec sink = KernelSpec::sine();
  // cosine: v_n = (-1)^n sqrt(2/pi) / (2n)!; sine: (-1)^n sqrt(2/pi) / (2n+1)!
  CHECK(residue_at_pole(cosk, 0) == doctest::Approx(-kSqrt2OverPi).epsilon(1e-4));
  CHECK(residue_at_pole(cosk, 1) == doctest::Approx(kSqrt2OverPi / 2.0).epsilon(1e-4));
  CHECK(residue_at_pole(cosk, 2) == doctest::Approx(-kSqrt2OverPi / 24.0).epsilon(1e-4));
  CHECK(residue_at_pole(sink, 0) == doctest::Approx(-kSqrt2OverPi).epsilon(1e-4));
  CHECK(residue_at_pole(sink, 1) == doctest::Approx(kSqrt2OverPi / 6.0).epsilon(1e-4));
  CHECK(residue_at_pole(sink, 2) == doctest::Approx(-kSqrt2OverPi / 120.0).epsilon(1e-4));
  CHECK_THROWS_AS(residue_at_pole(cosk, -1), DomainError);
}

TEST_CASE("mellin_transform satisfies Parseval") {
  const int n = 512;
  const double t_min = -20.0, t_max = 20.0;
  std::vector<double> t(n + 1), u(n + 1);
  const double dt = (t_max - t_min) / n;
  for (int i = 0; i <= n; ++i) {
    t[i] = t_min + i * dt;
    u[i] = std::exp(-t[i] * t[i]);  // u(x) = exp(-ln^2 x) at x = e^t
  }
  std::vector<double> lambda(801);
  for (int k = 0; k <= 800; ++k) lambda[k] = -20.0 + 0.05 * k;
  const std::vector<Complex> mu = mellin_transform(t, u, lambda);
  // ||Mu||^2 over the lambda grid (trapezoid) vs ||u||^2 = int e^t u(e^t)^2 dt
  double lhs = 0.0;
  for (size_t k = 0; k + 1 < mu.size(); ++k) {
    lhs += 0.5 * 0.05 * (std::norm(mu[k]) + std::norm(mu[k + 1]));
  }
  double rhs = 0.0;
  for (int i = 0; i < n; ++i) {
    rhs += 0.5 * dt *
           (std::exp(t[i]) * u[i] * u[i] + std::exp(t[i + 1]) * u[i + 1] * u[i + 1]);
  }
  CHECK(std::sqrt(lhs) == doctest::Approx(std::sqrt(rhs)).epsilon(1e-8));
}

TEST_CASE("mellin_transform rejects bad grids") {
  std::vector<double> t = {0.0, 1.0, 2.0, 3.5, 4.0, 5.0, 6.0, 7.0, 8.0};
  std::vector<double> u(t.size(), 0.0);
  std::vector<double> lam = {0.0};
  CHECK_THROWS_AS(mellin_transform(t, u, lam), GridError);
  std::vector<double> t2(9), u2(9, 1.0);
  for (int i = 0; i < 9; ++i) t2[i] = -4.0 + i;
  CHECK_THROWS_AS(mellin_transform(t2, u2, lam), GridError);  // no end decay
}

TEST_CASE("convolution identity residual is small for a decaying kernel") {
  const auto b = [](double t) { return std::exp(-t); };
  const auto u = [](double x) {
    const double s = std::log(x);
    return std::exp(-s * s);
  };
  CHECK(verify_convolution(b, u, -20.0, 20.0, 512) < 1e-6);
  // A window too short for b(xy) to decay at the lower corner is rejected.
  CHECK_THROWS_AS(verify_convolution(b, u, -2.0, 2.0, 64), GridError);
}

TEST_CASE("sample_symbol reports extrema and conjugate symmetry") {
  const KernelSpec cosk = KernelSpec::cosine();
  std::vector<double> grid;
  for (int k = -200; k <= 200; ++k) grid.push_back(0.05 * k);
  const SymbolSamples s = sample_symbol(cosk, 1.0, grid);
  CHECK(s.lambda_grid.size() == s.beta_values.size());
  // |beta_1| peaks at lambda = 0 with value 1/sigma_1 = 2.
  CHECK(s.p_l == doctest::Approx(2.0).epsilon(1e-9));
  for (size_t k = 0; k < grid.size(); ++k) {
    const Complex a = s.beta_values[k];
    const Complex b = s.beta_values[grid.size() - 1 - k];
    CHECK(std::abs(a - std::conj(b)) < 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("thresholds: closed forms, extrema search and the d=1 reflection form") {
  const KernelSpec cosk = KernelSpec::cosine();
  const KernelSpec sink = KernelSpec::sine();
  CHECK(sigma_l(cosk, 1.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sigma_l(cosk, 3.0) == doctest::Approx(1.875).epsilon(1e-9));
  CHECK(sigma_l(sink, 2.0) == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(sigma_bessel_closed(-0.5, 0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sigma_d1(1.0, Kind::cosine) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sigma_d1(3.0, Kind::cosine) == doctest::Approx(1.875).epsilon(1e-9));
  CHECK(sigma_d1(2.0, Kind::sine) == doctest::Approx(0.75).epsilon(1e-9));
  // Closed-form values computed at 30 digits.
  CHECK(sigma_cs(2, 2.7, Kind::cosine) ==
        doctest::Approx(0.839659244110981764).epsilon(1e-12));
  CHECK(sigma_cs(3, 1.2, Kind::sine) ==
        doctest::Approx(1.568783715677546605).epsilon(1e-12));
  CHECK_THROWS_AS(sigma_l(cosk, 0.5), ResonanceError);   // l = r_0 + 1/2
  CHECK_THROWS_AS(sigma_d1(2.5, Kind::cosine), ResonanceError);
  CHECK_THROWS_AS(sigma_cs(3, -1.0, Kind::cosine), DomainError);
}

TEST_CASE("sigma_cs matches the channel minimization") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int d = 1; d <= 4; ++d) {
    for (int i = 0; i < 25; ++i) {
      const double l = 0.05 + unif(rng) * (0.5 * d + 6.0);
      // skip resonant lines for either parity
      const double fc = std::fmod(l - 0.5 * d, 2.0);
      const double fs = std::fmod(l - 0.5 * d - 1.0, 2.0);
      if (std::min(std::abs(fc), std::abs(2.0 - std::abs(fc))) < 0.02) continue;
      if (std::min(std::abs(fs), std::abs(2.0 - std::abs(fs))) < 0.02) continue;
      CHECK(sigma_cs(d, l, Kind::cosine) ==
            doctest::Approx(sigma_channel(d, l, 0)).epsilon(1e-8));
      CHECK(sigma_cs(d, l, Kind::sine) ==
            doctest::Approx(sigma_channel(d, l, 1)).epsilon(1e-8));
    }
  }
}

TEST_CASE("beta_l error paths") {
  const KernelSpec cosk = KernelSpec::cosine();
  CHECK_THROWS_AS(beta_l(cosk, -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(beta_l(cosk, 2.5, 0.0), ResonanceError);
  // Off resonance the closed form and the generic path agree.
  const Complex b = beta_l(cosk, 1.3, 0.7);
  const Complex ref = mellin_symbol_bessel(-0.5, 0.5, Complex(1.3, 0.7));
  CHECK(std::abs(b - ref) < 1e-12 * std::abs(ref));
}
