#pragma once

#include <complex>

namespace friedrichs::specfun {

using Complex = std::complex<double>;

// Arguments closer than this to a nonpositive integer count as a pole.
inline constexpr double kPoleTolerance = 1e-12;

/// Log of the Gamma function, analytic continuation from the positive real
/// axis.  Throws PoleError within kPoleTolerance of {0, -1, -2, ...}.
Complex log_gamma(Complex z);

/// Gamma on the real line with the correct sign for negative arguments.
double gamma_real(double x);

/// |Gamma(a + i lambda) / Gamma(b + i lambda)| via log_gamma differences.
/// A numerator pole throws; a denominator pole gives 0.
double gamma_ratio_abs(double a, double b, double lambda);

/// Bessel function of the first kind, real order p >= -1/2, t > 0.
double bessel_j(double p, double t);

/// Sine integral Si(x) = int_0^x sin(t)/t dt together with the entire
/// cosine integral Cin(x) = int_0^x (1 - cos t)/t dt, x >= 0.  The
/// classical Ci is euler_gamma + log x - Cin(x).
struct SinCosIntegrals {
  double si;
  double cin;
};
SinCosIntegrals sin_cos_integrals(double x);

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240;

namespace detail {
// Both regimes exposed for the overlap agreement checks.
double bessel_j_series(double p, double t);
double bessel_j_asymptotic(double p, double t);
// Crossover between the two regimes at low order.
inline constexpr double kBesselCrossover = 14.0;
}  // namespace detail

}  // namespace friedrichs::specfun
