#include "friedrichs/specfun.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "friedrichs/errors.hpp"

namespace friedrichs::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

// Lanczos approximation, g = 607/128 (Godfrey coefficients, ~15 digits).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosCoeff[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool near_nonpositive_integer(Complex z, double tol) {
  if (z.real() > 0.5) return false;
  const double n = std::round(z.real());
  if (n > 0.5) return false;
  return std::abs(z - Complex(n, 0.0)) < tol;
}

// Valid for Re z >= 0.5.
Complex lanczos_log_gamma(Complex z) {
  Complex sum(kLanczosCoeff[0], 0.0);
  for (int k = 1; k < 15; ++k) {
    sum += kLanczosCoeff[k] / (z + Complex(k - 1, 0.0));
  }
  const Complex t = z + Complex(kLanczosG - 0.5, 0.0);
  return kLogSqrt2Pi + (z - 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace

Complex log_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("log_gamma: non-finite argument");
  }
  if (near_nonpositive_integer(z, kPoleTolerance)) {
    throw PoleError("log_gamma: argument at a Gamma pole");
  }
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  // Shift into the Lanczos half-plane through the recurrence
  // log Gamma(z) = log Gamma(z+n) - sum log(z+k).  Staying with principal
  // logs keeps the value on the continuation branch for Re z > 0 and keeps
  // Re(log Gamma) = log|Gamma| everywhere off the poles.
  const int n = static_cast<int>(std::ceil(0.5 - z.real()));
  Complex acc(0.0, 0.0);
  for (int k = 0; k < n; ++k) {
    acc += std::log(z + Complex(k, 0.0));
  }
  return lanczos_log_gamma(z + Complex(n, 0.0)) - acc;
}

double gamma_real(double x) {
  if (std::abs(x - std::round(x)) < kPoleTolerance && x < 0.5) {
    throw PoleError("gamma_real: argument at a pole");
  }
  if (x >= 0.5) {
    return std::exp(lanczos_log_gamma(Complex(x, 0.0)).real());
  }
  // Reflection keeps the sign right for x < 0.
  return kPi / (std::sin(kPi * x) * gamma_real(1.0 - x));
}

double gamma_ratio_abs(double a, double b, double lambda) {
  const Complex num(a, lambda);
  const Complex den(b, lambda);
  if (near_nonpositive_integer(num, kPoleTolerance)) {
    throw PoleError("gamma_ratio_abs: numerator at a Gamma pole");
  }
  if (near_nonpositive_integer(den, kPoleTolerance)) {
    return 0.0;
  }
  return std::exp(log_gamma(num).real() - log_gamma(den).real());
}

namespace detail {

double bessel_j_series(double p, double t) {
  const double x2 = 0.25 * t * t;
  double term = 1.0;
  double sum = 1.0;
  double comp = 0.0;  // Kahan carry; the alternating sum loses ~t/2.3 digits
  for (int k = 1; k < 200; ++k) {
    term *= -x2 / (k * (p + k));
    const double y = term - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  const double prefactor = std::exp(p * std::log(0.5 * t) - std::lgamma(p + 1.0));
  return prefactor * sum;
}

double bessel_j_asymptotic(double p, double t) {
  const double mu = 4.0 * p * p;
  const double omega = t - (0.5 * p + 0.25) * kPi;
  double a = 1.0;
  double P = 1.0;
  double Q = 0.0;
  double prev = std::numeric_limits<double>::max();
  for (int k = 1; k <= 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (8.0 * k * t);
    if (std::abs(a) >= prev) break;  // divergent tail reached
    prev = std::abs(a);
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 1) {
      Q += sign * a;
    } else {
      P += sign * a;
    }
    if (std::abs(a) < 1e-17) break;
  }
  return std::sqrt(2.0 / (kPi * t)) * (std::cos(omega) * P - std::sin(omega) * Q);
}

}  // namespace detail

namespace {

double bessel_low_order(double mu, double t) {
  return (t <= detail::kBesselCrossover) ? detail::bessel_j_series(mu, t)
                                         : detail::bessel_j_asymptotic(mu, t);
}

// Miller's backward recurrence for t < p, normalized against a low-order
// value from the series/asymptotic regimes.
double bessel_backward(double mu, int m, double t) {
  const int start = m + 30 + static_cast<int>(t);
  std::vector<double> f(start + 2, 0.0);
  f[start + 1] = 0.0;
  f[start] = 1e-280;
  for (int k = start; k >= 1; --k) {
    f[k - 1] = (2.0 * (mu + k) / t) * f[k] - f[k + 1];
    if (std::abs(f[k - 1]) > 1e260) {
      for (int j = k - 1; j <= start + 1; ++j) f[j] *= 1e-260;
    }
  }
  const double j0 = bessel_low_order(mu, t);
  const double j1 = bessel_low_order(mu + 1.0, t);
  // Normalize against whichever base value sits further from a Bessel zero.
  if (std::abs(j0) * std::abs(f[1]) >= std::abs(j1) * std::abs(f[0])) {
    return f[m] * (j0 / f[0]);
  }
  return f[m] * (j1 / f[1]);
}

}  // namespace

double bessel_j(double p, double t) {
  if (!(p >= -0.5)) throw DomainError("bessel_j: order must be >= -1/2");
  if (!(t > 0.0)) throw DomainError("bessel_j: argument must be positive");
  const int m = static_cast<int>(std::floor(p + 0.5));
  const double mu = p - m;  // mu in [-1/2, 1/2)
  if (m == 0) return bessel_low_order(mu, t);
  if (m == 1) return bessel_low_order(mu + 1.0, t);
  if (p > t) return bessel_backward(mu, m, t);
  // Forward recurrence is stable while the order stays below t.
  double jm1 = bessel_low_order(mu, t);
  double j = bessel_low_order(mu + 1.0, t);
  for (int k = 1; k < m; ++k) {
    const double next = (2.0 * (mu + k) / t) * j - jm1;
    jm1 = j;
    j = next;
  }
  return j;
}

SinCosIntegrals sin_cos_integrals(double x) {
  if (!(x >= 0.0)) throw DomainError("sin_cos_integrals: argument must be >= 0");
  if (x <= 4.0) {
    // Power series; Cin is entire so no log cancellation appears here.
    double si = 0.0, cin = 0.0;
    double term = x;  // x^{2k+1} / (2k+1)!
    for (int k = 0; k < 24; ++k) {
      si += term / (2 * k + 1);
      term *= x / (2 * k + 2);
      cin += term / (2 * k + 2);  // x^{2k+2} / ((2k+2) (2k+2)!) pending sign
      term *= -x / (2 * k + 3);
      if (std::abs(term) < 1e-18) break;
    }
    return {si, cin};
  }
  if (x > 1e15) {
    // |Ci| <= 1/x below the double roundoff of pi/2.
    return {0.5 * kPi, kEulerGamma + std::log(x)};
  }
  // E1(i x) by the modified Lentz continued fraction; then
  // Ci(x) = -Re E1(ix), Si(x) = pi/2 + Im E1(ix).
  const Complex z(0.0, x);
  const double tiny = 1e-300;
  Complex b = z + 1.0;
  Complex c = 1.0 / tiny;
  Complex d = 1.0 / b;
  Complex h = d;
  for (int i = 1; i < 300; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const Complex delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const Complex e1 = h * std::exp(-z);
  const double ci = -e1.real();
  const double si = 0.5 * kPi + e1.imag();
  return {si, kEulerGamma + std::log(x) - ci};
}

}  // namespace friedrichs::specfun
