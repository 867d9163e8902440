#include "friedrichs/predict.hpp"

#include <cmath>

#include "friedrichs/errors.hpp"

namespace friedrichs::predict {

namespace {

constexpr double kResonanceTol = 1e-9;

/// True when s = l - base lies within tolerance of a nonnegative even
/// integer, i.e. l sits on a resonance of the family with lowest exponent
/// base - 1/2.
bool resonant_even_offset(double s) {
  if (s < -kResonanceTol) return false;
  const double k = std::round(0.5 * s);
  return k >= 0.0 && std::abs(s - 2.0 * k) < kResonanceTol;
}

/// tau_n = (-1)^{n/2} for even n, (-1)^{(n+1)/2} for odd n.
double tau(int n) {
  const int half = (n % 2 == 0) ? n / 2 : (n + 1) / 2;
  return (half % 2 == 0) ? 1.0 : -1.0;
}

long long checked_mul(long long a, long long b) {
  long long out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("nu: multiplicity exceeds 64-bit range");
  }
  return out;
}

long long checked_add(long long a, long long b) {
  long long out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("count: total exceeds 64-bit range");
  }
  return out;
}

}  // namespace

CountResult count_fr(const mellin::KernelExpansion& expansion, double l,
                     double gamma, double sigma) {
  if (!(l > 0.0)) throw DomainError("count_fr: l must be positive");
  if (gamma == 0.0) return CountResult::zero_coupling();
  for (const auto& term : expansion.terms) {
    if (std::abs(l - (term.exponent + 0.5)) < kResonanceTol) {
      return CountResult::infinity();
    }
  }
  if (std::abs(gamma) > sigma) return CountResult::infinity();
  long long n = 0;
  for (const auto& term : expansion.terms) {
    if (term.exponent < l - 0.5 && gamma * term.coefficient < 0.0) ++n;
  }
  return CountResult::finite(n);
}

CountResult count_bes(double p, double q, double l, double gamma, double sigma) {
  if (!(p + q > -0.5) || !(q <= 1.0)) {
    throw DomainError("count_bes: requires -1/2-p < q <= 1");
  }
  if (!(l > 0.0)) throw DomainError("count_bes: l must be positive");
  if (gamma == 0.0) return CountResult::zero_coupling();
  const double s = l - (p + q + 0.5);
  if (resonant_even_offset(s)) return CountResult::infinity();
  if (std::abs(gamma) > sigma) return CountResult::infinity();
  // Non-resonant l never sits on an interval endpoint: the endpoints
  // p+q+1/2+2k of both branch partitions are exactly the resonances, so
  // the open-interval gap of the proposition is unreachable here.
  if (gamma < 0.0) {
    if (s < 0.0) return CountResult::finite(0);
    return CountResult::finite(static_cast<long long>(std::floor(0.5 * s)) + 1);
  }
  if (s < 2.0) return CountResult::finite(0);
  return CountResult::finite(static_cast<long long>(std::floor(0.5 * s)));
}

CountResult count_d1(double l, double gamma, Kind kind) {
  if (!(l > 0.0)) throw DomainError("count_d1: l must be positive");
  if (gamma == 0.0) return CountResult::zero_coupling();
  const double base = (kind == Kind::cosine) ? 0.5 : 1.5;
  const double s = l - base;
  if (resonant_even_offset(s)) return CountResult::infinity();
  const double sigma = mellin::sigma_d1(l, kind);
  if (std::abs(gamma) > sigma) return CountResult::infinity();
  if (s < 0.0) return CountResult::finite(0);
  const auto k = static_cast<long long>(std::floor(0.5 * s));
  return CountResult::finite(gamma > 0.0 ? (k + 1) / 2 : k / 2 + 1);
}

CountResult count_channel(int d, int n, double l, double gamma, Kind kind,
                          ChannelVariant variant) {
  if (d < 1 || n < 0) throw DomainError("count_channel: requires d >= 1, n >= 0");
  if ((n % 2 == 0) != (kind == Kind::cosine)) {
    throw ParityError("count_channel: channel parity does not match the kind");
  }
  if (gamma == 0.0) return CountResult::zero_coupling();
  const double p = n + 0.5 * (d - 2);
  const double q = 0.5;
  const double g = tau(n) * gamma;
  const double s = l - (n + 0.5 * d);
  if (resonant_even_offset(s)) return CountResult::infinity();
  const double sigma = mellin::sigma_channel(d, l, n);
  if (variant == ChannelVariant::bes) return count_bes(p, q, l, g, sigma);
  const auto kernel = mellin::KernelSpec::bessel(p, q);
  return count_fr(kernel.expansion_up_to(l + 2.0), l, g, sigma);
}

long long nu(int d, int n) {
  if (d < 2 || n < 0) throw DomainError("nu: requires d >= 2, n >= 0");
  if (n == 0) return 1;
  if (d == 2) return 2;
  // (2n+d-2) (n+d-3)! / ((d-2)! n!) = (2n+d-2) C(n+d-3, n) / (d-2).
  long long binom = 1;
  for (long long j = 1; j <= n; ++j) {
    binom = checked_mul(binom, d - 3 + j) / j;  // exact at each step
  }
  return checked_mul(2LL * n + d - 2, binom) / (d - 2);
}

CountResult count_total(int d, double l, double gamma, Kind kind,
                        ChannelVariant variant) {
  if (d < 1) throw DomainError("count_total: requires d >= 1");
  if (!(l > 0.0)) throw DomainError("count_total: l must be positive");
  if (d == 1) return count_d1(l, gamma, kind);
  if (gamma == 0.0) return CountResult::zero_coupling();
  const double base = 0.5 * d + (kind == Kind::sine ? 1.0 : 0.0);
  if (resonant_even_offset(l - base)) return CountResult::infinity();
  if (std::abs(gamma) > mellin::sigma_cs(d, l, kind)) {
    return CountResult::infinity();
  }
  const int n0 = (kind == Kind::cosine) ? 0 : 1;
  const int n_max = static_cast<int>(std::ceil(l - 0.5 * d)) + 2;
  long long total = 0;
  for (int n = n0; n <= n_max; n += 2) {
    const auto channel = count_channel(d, n, l, gamma, kind, variant);
    if (channel.infinite) return CountResult::infinity();
    total = checked_add(total, checked_mul(nu(d, n), channel.count));
  }
  return CountResult::finite(total);
}

CountResult count_total_closed(int d, double l, int gamma_sign, Kind kind) {
  if (d < 2) throw DomainError("count_total_closed: requires d >= 2");
  if (gamma_sign != 1 && gamma_sign != -1) {
    throw DomainError("count_total_closed: gamma_sign must be +1 or -1");
  }
  if (!(l > 0.0)) throw DomainError("count_total_closed: l must be positive");
  const double base = 0.5 * d + (kind == Kind::sine ? 1.0 : 0.0);
  const double s = l - base;
  if (resonant_even_offset(s)) {
    throw ResonanceError("count_total_closed: l on a resonance");
  }
  const auto k = static_cast<long long>(std::floor(0.5 * s));
  long long total = 0;
  if (kind == Kind::cosine) {
    if (gamma_sign < 0) {
      if (s < 0.0) return CountResult::finite(0);
      total = k + 1;
      for (long long p = 0; p <= (k - 1) / 2 && k >= 1; ++p) {
        total = checked_add(
            total, checked_mul(k - 2 * p - 1, nu(d, 4 * p + 2) + nu(d, 4 * p + 4)));
      }
    } else {
      if (s < 2.0) return CountResult::finite(0);
      for (long long p = 0; p <= k / 2; ++p) {
        total = checked_add(total,
                            checked_mul(k - 2 * p, nu(d, 4 * p) + nu(d, 4 * p + 2)));
      }
    }
  } else {
    if (gamma_sign > 0) {
      if (s < 0.0) return CountResult::finite(0);
      total = checked_mul(k + 1, nu(d, 1));
      for (long long p = 1; p <= (k + 1) / 2; ++p) {
        total = checked_add(
            total, checked_mul(k - 2 * p + 1, nu(d, 4 * p - 1) + nu(d, 4 * p + 1)));
      }
    } else {
      if (s < 2.0) return CountResult::finite(0);
      for (long long p = 0; p <= k / 2; ++p) {
        total = checked_add(
            total, checked_mul(k - 2 * p, nu(d, 4 * p + 1) + nu(d, 4 * p + 3)));
      }
    }
  }
  return CountResult::finite(total);
}

}  // namespace friedrichs::predict
