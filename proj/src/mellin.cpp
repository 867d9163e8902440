#include "friedrichs/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "friedrichs/errors.hpp"
#include "gauss.hpp"

namespace friedrichs::mellin {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;

double grid_spacing(std::span<const double> t_grid) {
  if (t_grid.size() < 8) throw GridError("mellin_transform: grid too short");
  const double dt = (t_grid.back() - t_grid.front()) / (t_grid.size() - 1);
  if (!(dt > 0.0)) throw GridError("mellin_transform: grid must be increasing");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (std::abs(t_grid[i] - t_grid[i - 1] - dt) > 1e-9 * std::max(1.0, dt)) {
      throw GridError("mellin_transform: grid not uniform");
    }
  }
  return dt;
}

/// Iterated pairwise averaging (Euler-type acceleration) of the last
/// window partial sums of a conditionally convergent panel series.
Complex average_partial_sums(std::vector<Complex> sums, std::size_t window) {
  if (sums.empty()) return {};
  if (sums.size() > window) {
    sums.erase(sums.begin(), sums.end() - static_cast<long>(window));
  }
  while (sums.size() > 1) {
    for (std::size_t i = 0; i + 1 < sums.size(); ++i) {
      sums[i] = 0.5 * (sums[i] + sums[i + 1]);
    }
    sums.pop_back();
  }
  return sums.front();
}

/// Unsubtracted small-t remainder g(t) = v(t) - sum of the first k0
/// expansion terms.  For the Bessel family the remainder is summed as the
/// tail of the power series itself, which avoids the cancellation of
/// forming v(t) first.
class SmallTRemainder {
 public:
  SmallTRemainder(const KernelSpec& kernel, const KernelExpansion& subtracted)
      : kernel_(&kernel), subtracted_(&subtracted) {
    if (kernel.is_bessel()) {
      const auto& [p, q] = kernel.pq();
      p_ = p;
      k0_ = subtracted.terms.size();
      lead_exponent_ = p + q + 2.0 * static_cast<double>(k0_);
      lead_coeff_ = std::exp(-p * std::log(2.0) - std::lgamma(p + 1.0));
      for (std::size_t k = 1; k <= k0_; ++k) {
        lead_coeff_ *= -0.25 / (static_cast<double>(k) * (p + static_cast<double>(k)));
      }
    }
  }

  double operator()(double t) const {
    if (kernel_->is_bessel()) {
      const double lead = lead_coeff_ * std::pow(t, lead_exponent_);
      if (lead == 0.0) return 0.0;
      double term = 1.0;
      double sum = 1.0;
      const double x2 = 0.25 * t * t;
      for (std::size_t j = 1; j < 200; ++j) {
        const double k = static_cast<double>(k0_ + j);
        term *= -x2 / (k * (p_ + k));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
      return lead * sum;
    }
    double g = kernel_->value(t);
    for (const auto& term : subtracted_->terms) {
      g -= term.coefficient * std::pow(t, term.exponent);
    }
    return g;
  }

  /// Exponent of the leading unsubtracted term (decay rate of g at 0).
  double lead_exponent() const {
    if (kernel_->is_bessel()) return lead_exponent_;
    return subtracted_->remainder_exponent;
  }

 private:
  const KernelSpec* kernel_;
  const KernelExpansion* subtracted_;
  double p_ = 0.0;
  std::size_t k0_ = 0;
  double lead_exponent_ = 0.0;
  double lead_coeff_ = 0.0;
};

/// int_0^1 g(t) t^{-1/2-z} dt via t = e^{-s}, where g decays like
/// t^{lead_exponent} and the integrand like e^{-alpha s}.
Complex small_t_integral(const SmallTRemainder& g, Complex z) {
  const double alpha = g.lead_exponent() - z.real() + 0.5;
  const double s_max = std::min(42.0 / alpha, 700.0);
  const double panel = std::min(2.0, 8.0 / (1.0 + std::abs(z.imag())));
  const auto n_panels =
      std::min<std::size_t>(2000, static_cast<std::size_t>(std::ceil(s_max / panel)));
  const Complex w = z - 0.5;
  Complex total{};
  for (std::size_t j = 0; j < n_panels; ++j) {
    const double a = s_max * static_cast<double>(j) / n_panels;
    const double b = s_max * static_cast<double>(j + 1) / n_panels;
    total += quad::gl16(
        [&](double s) { return g(std::exp(-s)) * std::exp(w * s); }, a, b);
  }
  return total;
}

/// int_1^inf v(t) t^{-1/2-z} dt for the oscillatory Bessel family: the
/// region up to the stationary point of the phase t -+ Im(z) ln t is
/// integrated directly with oscillation-resolving subpanels; beyond it the
/// half-period panel sums converge conditionally and are averaged.
Complex bessel_tail_integral(const KernelSpec& kernel, Complex z) {
  const double lam = std::abs(z.imag());
  const Complex w = -0.5 - z;
  const auto f = [&](double t) { return kernel.value(t) * std::exp(w * std::log(t)); };

  const double direct_end = 1.0 + kPi * std::ceil((2.0 * lam + 39.0) / kPi);
  Complex direct{};
  for (double a = 1.0; a < direct_end - 0.5 * kPi; a += kPi) {
    const int sub = 1 + static_cast<int>(lam / a);
    for (int s = 0; s < sub; ++s) {
      direct += quad::gl16(f, a + kPi * s / sub, a + kPi * (s + 1) / sub);
    }
  }

  constexpr int kPanels = 64;
  std::vector<Complex> partial(kPanels);
  Complex acc = direct;
  for (int j = 0; j < kPanels; ++j) {
    const double a = direct_end + kPi * j;
    const int sub = 1 + static_cast<int>(lam / a);
    for (int s = 0; s < sub; ++s) {
      acc += quad::gl16(f, a + kPi * s / sub, a + kPi * (s + 1) / sub);
    }
    partial[j] = acc;
  }
  return average_partial_sums(std::move(partial), 32);
}

/// Finite tail for tabulated kernels (v vanishes past the sample range).
Complex tabulated_tail_integral(const KernelSpec& kernel, Complex z) {
  const auto& tab = kernel.table();
  if (tab.t.empty() || tab.t.back() <= 1.0) return {};
  const Complex w = -0.5 - z;
  const auto f = [&](double t) { return kernel.value(t) * std::exp(w * std::log(t)); };
  Complex total{};
  double a = 1.0;
  for (std::size_t i = 0; i < tab.t.size(); ++i) {
    const double b = tab.t[i];
    if (b <= a) continue;
    total += quad::gl8(f, a, b);
    a = b;
  }
  return total;
}

double golden_minimize(const std::function<double(double)>& f, double a, double b,
                       double tol, double& x_best) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  x_best = 0.5 * (a + b);
  return f(x_best);
}

struct ScanResult {
  double max_value = 0.0;
  double min_value = 0.0;
  double argmax = 0.0;
  double argmin = 0.0;
};

/// Coarse scan of f over [0, Lambda] (step 0.05), doubling Lambda while the
/// window looks too small to contain the extremum, then golden-section
/// refinement to 1e-8.  `watch_max` selects which extremum drives the
/// window extension.
ScanResult scan_extrema(const std::function<double(double)>& f, bool watch_max) {
  constexpr double kStep = 0.05;
  double lambda_max = 200.0;
  std::vector<double> values;
  for (int pass = 0; pass < 6; ++pass) {
    const auto n = static_cast<std::size_t>(std::lround(lambda_max / kStep));
    values.reserve(n + 1);
    for (std::size_t i = values.size(); i <= n; ++i) values.push_back(f(kStep * i));
    const auto it_max = std::max_element(values.begin(), values.end());
    const auto it_min = std::min_element(values.begin(), values.end());
    const auto i_max = static_cast<std::size_t>(it_max - values.begin());
    const auto i_min = static_cast<std::size_t>(it_min - values.begin());
    const bool at_edge = watch_max ? (i_max == n) : (i_min == n);
    const bool tail_high = watch_max && values.back() > 0.5 * *it_max;
    if ((at_edge || tail_high) && lambda_max < 3200.0) {
      lambda_max *= 2.0;
      continue;
    }

    ScanResult out;
    out.max_value = *it_max;
    out.argmax = kStep * i_max;
    out.min_value = *it_min;
    out.argmin = kStep * i_min;
    if (at_edge) {
      // Window extension gave up: report the boundary as the extremum.
      if (watch_max) out.max_value = std::numeric_limits<double>::infinity();
      return out;
    }
    if (i_max > 0 && i_max < n) {
      out.max_value = -golden_minimize([&](double x) { return -f(x); },
                                       kStep * (i_max - 1), kStep * (i_max + 1),
                                       1e-8, out.argmax);
    }
    if (i_min > 0 && i_min < n) {
      out.min_value = golden_minimize(f, kStep * (i_min - 1), kStep * (i_min + 1),
                                      1e-8, out.argmin);
    }
    return out;
  }
  throw ConvergenceError("scan_extrema: search window kept growing");
}

KernelExpansion subtracted_terms(const KernelSpec& kernel, double re_z) {
  return kernel.expansion_up_to(re_z + 2.5);
}

}  // namespace

std::vector<Complex> mellin_transform(std::span<const double> t_grid,
                                      std::span<const double> u,
                                      std::span<const double> lambda_grid) {
  if (t_grid.size() != u.size()) {
    throw GridError("mellin_transform: sample count mismatch");
  }
  const double dt = grid_spacing(t_grid);
  if (std::abs(u.front()) > 1e-12 || std::abs(u.back()) > 1e-12) {
    throw GridError("mellin_transform: u has not decayed at the grid ends");
  }
  for (double lam : lambda_grid) {
    if (std::abs(lam) > kPi / dt) {
      throw GridError("mellin_transform: lambda beyond the grid Nyquist limit");
    }
  }
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    w[i] = std::exp(0.5 * t_grid[i]) * u[i];
  }
  std::vector<Complex> out(lambda_grid.size());
  for (std::size_t j = 0; j < lambda_grid.size(); ++j) {
    const double lam = lambda_grid[j];
    Complex sum{};
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double weight = (i == 0 || i + 1 == w.size()) ? 0.5 : 1.0;
      sum += weight * w[i] * std::exp(Complex(0.0, -lam * t_grid[i]));
    }
    out[j] = kInvSqrt2Pi * dt * sum;
  }
  return out;
}

double verify_convolution(const std::function<double(double)>& b,
                          const std::function<double(double)>& u, double t_min,
                          double t_max, int n) {
  if (n < 8 || !(t_max > t_min)) throw GridError("verify_convolution: bad window");
  const double h = (t_max - t_min) / n;

  std::vector<double> t(n + 1), u1(n + 1);
  for (int i = 0; i <= n; ++i) {
    t[i] = t_min + h * i;
    u1[i] = u(std::exp(t[i]));
  }
  const auto b1 = [&](double tau) { return std::exp(0.5 * tau) * b(std::exp(tau)); };
  if (std::abs(b1(2.0 * t_min)) > 1e-8 || std::abs(b1(2.0 * t_max)) > 1e-8) {
    throw GridError("verify_convolution: kernel has not decayed on the window");
  }

  // Left side: the double integral over the log window, with both the
  // kernel and u carrying their e^{t/2} log-measure weights.
  std::vector<double> w1(n + 1);
  for (int i = 0; i <= n; ++i) w1[i] = std::exp(0.5 * t[i]) * u1[i];
  double lhs = 0.0;
  for (int i = 0; i <= n; ++i) {
    if (w1[i] == 0.0) continue;
    const double wi = (i == 0 || i == n) ? 0.5 : 1.0;
    double row = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double wj = (j == 0 || j == n) ? 0.5 : 1.0;
      row += wj * b1(t[i] + t[j]) * w1[j];
    }
    lhs += wi * w1[i] * row;
  }
  lhs *= h * h;

  // Right side: int beta(lambda) (Mu)(-lambda) conj((Mu)(lambda)) dlambda
  // with beta(lambda) = B(1/2 + i lambda) by quadrature over the support
  // of b1.
  const double lambda_max = std::min(0.9 * kPi / h, 16.0);
  const double dl = kPi / (2.0 * (t_max - t_min));
  const int m = static_cast<int>(std::ceil(lambda_max / dl));
  std::vector<double> lambdas(2 * m + 1);
  for (int j = -m; j <= m; ++j) lambdas[j + m] = dl * j;

  const auto mu = mellin_transform(t, u1, lambdas);
  double rhs = 0.0;
  double rhs_im = 0.0;
  for (int j = -m; j <= m; ++j) {
    const double lam = lambdas[j + m];
    Complex beta{};
    for (int k = 0; k <= 2 * n; ++k) {
      const double tau = 2.0 * t_min + h * k;
      const double weight = (k == 0 || k == 2 * n) ? 0.5 : 1.0;
      beta += weight * b1(tau) * std::exp(Complex(0.0, -lam * tau));
    }
    beta *= h;
    const double wj = (std::abs(j) == m) ? 0.5 : 1.0;
    const Complex term = beta * mu[m - j] * std::conj(mu[m + j]);
    rhs += wj * term.real();
    rhs_im += wj * term.imag();
  }
  rhs *= dl;
  rhs_im *= dl;
  return std::abs(lhs - rhs) + std::abs(rhs_im);
}

Complex mellin_symbol_bessel(double p, double q, Complex z) {
  const Complex num = 0.5 * (p + q - z + 0.5);
  const Complex den = 0.5 * (p - q + z + 1.5);
  // Numerator poles are the resonant points z = p + q + 1/2 + 2k.
  const Complex log_num = specfun::log_gamma(num);
  if (den.real() < 0.5 && std::abs(den - std::round(den.real())) <
                              specfun::kPoleTolerance) {
    return {};  // denominator pole: the symbol vanishes
  }
  const Complex log_den = specfun::log_gamma(den);
  return std::exp((q - z - 0.5) * std::log(2.0) + log_num - log_den);
}

Complex mellin_symbol_quadrature(const KernelSpec& kernel, Complex z) {
  const double x = z.real();
  if (!(x > 0.0) || !(x < kernel.band_limit())) {
    throw BandError("mellin_symbol_quadrature: Re z outside the continuation band");
  }
  const auto subtracted = subtracted_terms(kernel, x);
  for (const auto& term : subtracted.terms) {
    if (std::abs(x - (term.exponent + 0.5)) < 1e-6) {
      throw PoleProximityError("mellin_symbol_quadrature: Re z within 1e-6 of a pole");
    }
  }

  const SmallTRemainder g(kernel, subtracted);
  Complex value = small_t_integral(g, z);
  for (const auto& term : subtracted.terms) {
    value += term.coefficient / (term.exponent + 0.5 - z);
  }
  value += kernel.is_bessel() ? bessel_tail_integral(kernel, z)
                              : tabulated_tail_integral(kernel, z);
  return value;
}

double residue_at_pole(const KernelSpec& kernel, int n) {
  if (n < 0) throw DomainError("residue_at_pole: negative index");
  double pole = 0.0;
  if (kernel.is_bessel()) {
    const auto& [p, q] = kernel.pq();
    pole = p + q + 2.0 * n + 0.5;
  } else {
    const auto& terms = kernel.table().expansion.terms;
    if (static_cast<std::size_t>(n) >= terms.size()) {
      throw DomainError("residue_at_pole: index beyond the supplied expansion");
    }
    pole = terms[n].exponent + 0.5;
  }

  // Neville extrapolation of eps * B(pole + eps) to eps = 0.
  constexpr int kLevels = 5;
  double eps[kLevels];
  double tab[kLevels];
  for (int j = 0; j < kLevels; ++j) {
    eps[j] = 1e-3 * std::pow(2.0, -j);
    tab[j] = (eps[j] * mellin_symbol_quadrature(kernel, Complex(pole + eps[j], 0.0)))
                 .real();
  }
  double previous = tab[0];
  for (int level = 1; level < kLevels; ++level) {
    previous = tab[0];
    for (int j = 0; j < kLevels - level; ++j) {
      tab[j] = (eps[j] * tab[j + 1] - eps[j + level] * tab[j]) /
               (eps[j] - eps[j + level]);
    }
  }
  if (std::abs(tab[0] - previous) > 1e-4) {
    throw ConvergenceError("residue_at_pole: extrapolation did not settle");
  }
  return tab[0];
}

Complex beta_l(const KernelSpec& kernel, double l, double lambda) {
  if (!(l > 0.0)) throw DomainError("beta_l: l must be positive");
  if (kernel.is_resonant(l, 1e-9)) {
    throw ResonanceError("beta_l: resonant l (pole of the symbol)");
  }
  if (kernel.is_bessel()) {
    const auto& [p, q] = kernel.pq();
    return mellin_symbol_bessel(p, q, Complex(l, lambda));
  }
  return mellin_symbol_quadrature(kernel, Complex(l, lambda));
}

SymbolSamples sample_symbol(const KernelSpec& kernel, double l,
                            std::span<const double> lambda_grid) {
  SymbolSamples out;
  out.l = l;
  out.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
  out.beta_values.resize(lambda_grid.size());
  out.p_l = 0.0;
  out.q_l = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    out.beta_values[i] = beta_l(kernel, l, lambda_grid[i]);
    const double mod = std::abs(out.beta_values[i]);
    out.p_l = std::max(out.p_l, mod);
    out.q_l = std::min(out.q_l, mod);
  }
  if (lambda_grid.empty()) out.q_l = 0.0;

  // Conjugate symmetry across every mirrored pair present in the grid.
  std::vector<std::size_t> order(lambda_grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lambda_grid[a] < lambda_grid[b]; });
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double target = -lambda_grid[order[i]];
    auto it = std::lower_bound(order.begin(), order.end(), target,
                               [&](std::size_t idx, double v) {
                                 return lambda_grid[idx] < v - 1e-12;
                               });
    if (it == order.end() || std::abs(lambda_grid[*it] - target) > 1e-12) continue;
    const Complex a = out.beta_values[order[i]];
    const Complex b = out.beta_values[*it];
    if (std::abs(b - std::conj(a)) > 1e-10) {
      throw SpecError("sample_symbol: conjugate symmetry violated");
    }
  }
  return out;
}

SymbolExtrema symbol_extrema(const KernelSpec& kernel, double l) {
  const auto f = [&](double lambda) { return std::abs(beta_l(kernel, l, lambda)); };
  const auto scan = scan_extrema(f, /*watch_max=*/true);
  SymbolExtrema out;
  out.p_l = scan.max_value;
  out.q_l = scan.min_value;
  out.argmax = scan.argmax;
  out.argmin = scan.argmin;
  return out;
}

double sigma_l(const KernelSpec& kernel, double l) {
  const double p = symbol_extrema(kernel, l).p_l;
  return std::isinf(p) ? 0.0 : 1.0 / p;
}

double sigma_bessel_closed(double p, double q, double l) {
  const auto kernel = KernelSpec::bessel(p, q);
  if (kernel.is_resonant(l, 1e-9)) {
    throw ResonanceError("sigma_bessel_closed: resonant l");
  }
  const double a = 0.5 * (p - q + l + 1.5);
  const double b = 0.5 * (p + q - l + 0.5);
  const double prefactor = std::pow(2.0, l - q + 0.5);
  const auto f = [&](double lambda) {
    return prefactor * specfun::gamma_ratio_abs(a, b, 0.5 * lambda);
  };
  const auto scan = scan_extrema(f, /*watch_max=*/false);
  return scan.min_value;
}

double sigma_channel(int d, double l, int n) {
  if (d < 1 || n < 0) throw DomainError("sigma_channel: requires d >= 1, n >= 0");
  if (!(l > 0.0)) throw DomainError("sigma_channel: l must be positive");
  const double s = l - n - 0.5 * d;
  const double k = std::round(0.5 * s);
  if (s > -1e-9 && k >= 0.0 && std::abs(s - 2.0 * k) < 1e-9) {
    throw ResonanceError("sigma_channel: resonant l = n + d/2 + 2k");
  }
  const double a = 0.5 * (n + 0.5 * d + l);
  const double b = 0.5 * (n + 0.5 * d - l);
  const double prefactor = std::pow(2.0, l);
  const auto f = [&](double lambda) {
    return prefactor * specfun::gamma_ratio_abs(a, b, 0.5 * lambda);
  };
  const auto scan = scan_extrema(f, /*watch_max=*/false);
  return scan.min_value;
}

double sigma_cs(int d, double l, Kind kind) {
  if (d < 1) throw DomainError("sigma_cs: requires d >= 1");
  if (!(l > 0.0)) throw DomainError("sigma_cs: l must be positive");
  const double base = 0.5 * d + (kind == Kind::sine ? 1.0 : 0.0);
  const double s = l - base;
  const double k = std::round(0.5 * s);
  if (s > -1e-9 && k >= 0.0 && std::abs(s - 2.0 * k) < 1e-9) {
    throw ResonanceError("sigma_cs: resonant l");
  }
  return std::pow(2.0, l) * std::abs(specfun::gamma_real(0.5 * (base + l)) /
                                     specfun::gamma_real(0.5 * (base - l)));
}

double sigma_d1(double l, Kind kind) {
  if (!(l > 0.0)) throw DomainError("sigma_d1: l must be positive");
  const double w = 0.5 - l;
  // (pi/2)^{1/2} / |cos(pi w/2) Gamma(w)| with the denominator rewritten by
  // the reflection formula as pi / (2 sin(pi w/2) Gamma(1-w)), so the
  // 0 * inf products at negative integer w cancel exactly (sine: cos/sin
  // swapped).
  const double trig = (kind == Kind::cosine) ? std::sin(0.5 * kPi * w)
                                             : std::cos(0.5 * kPi * w);
  if (std::abs(trig) < 1e-9) {
    throw ResonanceError("sigma_d1: resonant l");
  }
  return std::sqrt(kPi / 2.0) * (2.0 / kPi) *
         std::abs(trig * specfun::gamma_real(1.0 - w));
}

}  // namespace friedrichs::mellin
