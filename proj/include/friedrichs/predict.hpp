#pragma once

#include "friedrichs/kernel.hpp"
#include "friedrichs/mellin.hpp"

namespace friedrichs::predict {

using mellin::Kind;

/// Negative-eigenvalue count of a perturbed operator: a finite number, or
/// an infinite negative spectrum.  `unperturbed` marks the gamma = 0 case
/// (count trivially 0, outside the counting formulas' hypotheses).
struct CountResult {
  bool infinite = false;
  long long count = 0;
  bool unperturbed = false;

  static CountResult finite(long long n) { return {false, n, false}; }
  static CountResult infinity() { return {true, 0, false}; }
  static CountResult zero_coupling() { return {false, 0, true}; }

  friend bool operator==(const CountResult&, const CountResult&) = default;
};

/// Which of the two counting routes to use per channel; the literal
/// interval counts and the sign-restricted expansion-term counts disagree
/// for deep intervals, so both stay available for adjudication.
enum class ChannelVariant { bes, fr };

/// Sign-restricted count: Infinite at resonant l or |gamma| > sigma, else
/// #{k : r_k < l - 1/2 and gamma * v_k < 0}.  The expansion must cover
/// exponents up to l - 1/2.
CountResult count_fr(const mellin::KernelExpansion& expansion, double l,
                     double gamma, double sigma);

/// Literal interval count for the Bessel-family kernel t^q J_p(t):
/// gamma < 0 gives k+1 eigenvalues on (p+q+1/2+2k, p+q+5/2+2k), gamma > 0
/// gives k+1 on (p+q+5/2+2k, p+q+9/2+2k); Infinite at resonant l or
/// |gamma| > sigma.
CountResult count_bes(double p, double q, double l, double gamma, double sigma);

/// One-dimensional cosine/sine counts: [(k+1)/2] (gamma > 0) or [k/2]+1
/// (gamma < 0) eigenvalues on the k-th inter-resonance interval.
CountResult count_d1(double l, double gamma, Kind kind);

/// Count for the n-th spherical-harmonic channel in dimension d: the
/// Bessel-family count at p = n+(d-2)/2, q = 1/2 with effective coupling
/// tau_n * gamma and threshold sigma_channel(d, l, n).
CountResult count_channel(int d, int n, double l, double gamma, Kind kind,
                          ChannelVariant variant = ChannelVariant::bes);

/// Multiplicity of the n-th spherical-harmonic space in dimension d >= 2:
/// (2n+d-2) (n+d-3)! / ((d-2)! n!), overflow-checked.
long long nu(int d, int n);

/// Total count over all channels of the matching parity, weighted by the
/// channel multiplicities nu(d, n); d = 1 dispatches to count_d1.
CountResult count_total(int d, double l, double gamma, Kind kind,
                        ChannelVariant variant = ChannelVariant::bes);

/// Closed-form totals N^{(+-)} for |gamma| in (0, sigma]: only the sign of
/// gamma enters.
CountResult count_total_closed(int d, double l, int gamma_sign, Kind kind);

}  // namespace friedrichs::predict
