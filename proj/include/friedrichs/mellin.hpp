#pragma once

#include <functional>
#include <span>
#include <vector>

#include "friedrichs/kernel.hpp"
#include "friedrichs/specfun.hpp"

namespace friedrichs::mellin {

using specfun::Complex;

enum class Kind { cosine, sine };

/// Mellin transform of u on a uniform log grid: samples of
/// (Mu)(lambda) = (2pi)^{-1/2} int x^{-1/2-i lambda} u(x) dx,
/// with u given at x = exp(t_i).
std::vector<Complex> mellin_transform(std::span<const double> t_grid,
                                      std::span<const double> u,
                                      std::span<const double> lambda_grid);

/// Residual of the convolution identity
///   int int b(xy) u(y) u(x) dx dy = int beta(lambda) (Mu)(-lambda)
///   conj((Mu)(lambda)) d lambda,
/// both sides by quadrature on the log window [t_min, t_max] with n cells.
double verify_convolution(const std::function<double(double)>& b,
                          const std::function<double(double)>& u, double t_min,
                          double t_max, int n);

/// Closed-form symbol of the Bessel-family kernel t^q J_p(t):
/// 2^{q-z-1/2} Gamma((p+q-z+1/2)/2) / Gamma((p-q+z+3/2)/2).
Complex mellin_symbol_bessel(double p, double q, Complex z);

/// Symbol by quadrature with meromorphic continuation: expansion terms are
/// subtracted on (0,1) and restored analytically; the oscillatory tail on
/// (1,inf) is summed over half-period panels with averaged partial sums.
Complex mellin_symbol_quadrature(const KernelSpec& kernel, Complex z);

/// Residue of the symbol at its n-th pole r_n + 1/2 (zero-based n),
/// computed as the Richardson-extrapolated limit of (z - pole) B(z).
/// Must equal -v_n.
double residue_at_pole(const KernelSpec& kernel, int n);

/// beta_l(lambda) = B(l + i lambda); closed form for the Bessel family,
/// quadrature for tabulated kernels.  Resonant l throws.
Complex beta_l(const KernelSpec& kernel, double l, double lambda);

struct SymbolSamples {
  double l = 0.0;
  std::vector<double> lambda_grid;
  std::vector<Complex> beta_values;
  double p_l = 0.0;  // max modulus on the grid
  double q_l = 0.0;  // min modulus on the grid
};

/// Samples beta_l on the given grid and checks the conjugate symmetry
/// beta_l(-lambda) = conj(beta_l(lambda)) for all mirrored pairs.
SymbolSamples sample_symbol(const KernelSpec& kernel, double l,
                            std::span<const double> lambda_grid);

struct SymbolExtrema {
  double p_l = 0.0;
  double q_l = 0.0;
  double argmax = 0.0;
  double argmin = 0.0;
};

/// Max/min of |beta_l| over lambda >= 0: coarse grid scan (step 0.05) on a
/// window that is extended until the tail lies below the maximum, then
/// golden-section refinement to 1e-8 in lambda.
SymbolExtrema symbol_extrema(const KernelSpec& kernel, double l);

/// Coupling threshold sigma_l = 1 / p_l.
double sigma_l(const KernelSpec& kernel, double l);

/// Same threshold through the Gamma-ratio formula
/// 2^{-q+l+1/2} min_lambda |Gamma((p-q+l+i lambda+3/2)/2) /
/// Gamma((p+q-l-i lambda+1/2)/2)| (independent code path).
double sigma_bessel_closed(double p, double q, double l);

/// Channel threshold sigma_l^{(n)} = 2^l min_lambda
/// |Gamma((n+d/2+l+i lambda)/2) / Gamma((n+d/2-l-i lambda)/2)|.
double sigma_channel(int d, double l, int n);

/// Closed-form thresholds sigma_l^{(c)}, sigma_l^{(s)} evaluated at
/// lambda = 0 (where the minimum is attained).
double sigma_cs(int d, double l, Kind kind);

/// d = 1 reflection forms (pi/2)^{1/2} |cos(pi(1/2-l)/2) Gamma(1/2-l)|^{-1}
/// and the sine analogue, evaluated through the reflection formula so the
/// 0 * inf points are handled exactly.
double sigma_d1(double l, Kind kind);

}  // namespace friedrichs::mellin
