#include "friedrichs/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "friedrichs/errors.hpp"
#include "friedrichs/specfun.hpp"

namespace friedrichs::mellin {

void KernelExpansion::validate() const {
  double prev = -0.5;
  for (const auto& term : terms) {
    if (!(term.exponent > prev)) {
      throw SpecError("KernelExpansion: exponents must be increasing and > -1/2");
    }
    if (term.coefficient == 0.0) {
      throw SpecError("KernelExpansion: zero coefficient");
    }
    prev = term.exponent;
  }
  if (!(remainder_exponent > prev)) {
    throw SpecError("KernelExpansion: remainder exponent must exceed the last term");
  }
}

KernelSpec KernelSpec::bessel(double p, double q) {
  if (!(p >= -0.5)) throw DomainError("KernelSpec: Bessel order must be >= -1/2");
  if (!(p + q > -0.5)) throw DomainError("KernelSpec: requires p + q > -1/2");
  if (!(q <= 1.0)) throw DomainError("KernelSpec: requires q <= 1");
  return KernelSpec(BesselPQ{p, q});
}

KernelSpec KernelSpec::cosine() { return bessel(-0.5, 0.5); }
KernelSpec KernelSpec::sine() { return bessel(0.5, 0.5); }

KernelSpec KernelSpec::tabulated(std::vector<double> t, std::vector<double> v,
                                 KernelExpansion expansion) {
  if (t.size() != v.size()) throw SpecError("KernelSpec: sample size mismatch");
  if (!std::is_sorted(t.begin(), t.end())) {
    throw SpecError("KernelSpec: sample grid must be increasing");
  }
  expansion.validate();
  return KernelSpec(TabulatedKernel{std::move(t), std::move(v), std::move(expansion)});
}

double KernelSpec::value(double t) const {
  if (!(t > 0.0)) throw DomainError("KernelSpec: t must be positive");
  if (is_bessel()) {
    const auto& [p, q] = pq();
    if (p == -0.5 && q == 0.5) return std::sqrt(2.0 / M_PI) * std::cos(t);
    if (p == 0.5 && q == 0.5) return std::sqrt(2.0 / M_PI) * std::sin(t);
    return std::pow(t, q) * specfun::bessel_j(p, t);
  }
  const auto& tab = table();
  if (tab.t.empty() || t < tab.t.front()) {
    double sum = 0.0;
    for (const auto& term : tab.expansion.terms) {
      sum += term.coefficient * std::pow(t, term.exponent);
    }
    return sum;
  }
  if (t > tab.t.back()) return 0.0;
  const auto it = std::upper_bound(tab.t.begin(), tab.t.end(), t);
  const std::size_t i = (it == tab.t.begin()) ? 1 : it - tab.t.begin();
  const std::size_t hi = std::min(i, tab.t.size() - 1);
  const double t0 = tab.t[hi - 1], t1 = tab.t[hi];
  const double w = (t1 > t0) ? (t - t0) / (t1 - t0) : 0.0;
  return (1.0 - w) * tab.v[hi - 1] + w * tab.v[hi];
}

KernelExpansion KernelSpec::expansion_up_to(double max_exponent) const {
  if (!is_bessel()) {
    const auto& exp = table().expansion;
    KernelExpansion out;
    for (const auto& term : exp.terms) {
      if (term.exponent < max_exponent) out.terms.push_back(term);
    }
    out.remainder_exponent = out.terms.size() == exp.terms.size()
                                 ? exp.remainder_exponent
                                 : exp.terms[out.terms.size()].exponent;
    return out;
  }
  const auto& [p, q] = pq();
  KernelExpansion out;
  double coeff = std::exp(-p * std::log(2.0) - std::lgamma(p + 1.0));
  int k = 0;
  while (p + q + 2.0 * k < max_exponent) {
    out.terms.push_back({p + q + 2.0 * k, coeff});
    ++k;
    coeff *= -0.25 / (k * (p + k));
  }
  out.remainder_exponent = p + q + 2.0 * k;
  return out;
}

bool KernelSpec::is_resonant(double l, double tol) const {
  if (is_bessel()) {
    const auto& [p, q] = pq();
    const double s = l - (p + q + 0.5);
    if (s < -tol) return false;
    const double k = std::round(0.5 * s);
    return k >= 0.0 && std::abs(s - 2.0 * k) < tol;
  }
  for (const auto& term : table().expansion.terms) {
    if (std::abs(l - (term.exponent + 0.5)) < tol) return true;
  }
  return false;
}

double KernelSpec::band_limit() const {
  if (is_bessel()) return std::numeric_limits<double>::infinity();
  return table().expansion.remainder_exponent + 0.5;
}

double KernelSpec::oscillation_frequency() const {
  return is_bessel() ? 1.0 : 0.0;
}

}  // namespace friedrichs::mellin
