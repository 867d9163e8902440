#pragma once

#include <variant>
#include <vector>

namespace friedrichs::mellin {

/// One term v_k t^{r_k} of the small-t expansion of the kernel.
struct ExpansionTerm {
  double exponent;     // r_k
  double coefficient;  // v_k
};

/// Small-t expansion data: ordered terms plus the remainder exponent
/// r_{N+1} bounding the error term O(t^{r_{N+1}}).
struct KernelExpansion {
  std::vector<ExpansionTerm> terms;
  double remainder_exponent = 0.0;

  /// Enforces -1/2 < r_1 < ... < r_N < r_{N+1} and nonzero coefficients.
  void validate() const;
};

struct BesselPQ {
  double p;
  double q;
};

struct TabulatedKernel {
  std::vector<double> t;  // strictly increasing sample abscissae
  std::vector<double> v;  // kernel samples v(t_i)
  KernelExpansion expansion;
};

/// Dilation kernel v(t): either the Bessel family t^q J_p(t) or a tabulated
/// kernel with user-supplied expansion data.
class KernelSpec {
 public:
  static KernelSpec bessel(double p, double q);
  static KernelSpec cosine();  // (2/pi)^(1/2) cos t, i.e. (p,q) = (-1/2,1/2)
  static KernelSpec sine();    // (2/pi)^(1/2) sin t, i.e. (p,q) = (1/2,1/2)
  static KernelSpec tabulated(std::vector<double> t, std::vector<double> v,
                              KernelExpansion expansion);

  bool is_bessel() const { return std::holds_alternative<BesselPQ>(family_); }
  const BesselPQ& pq() const { return std::get<BesselPQ>(family_); }
  const TabulatedKernel& table() const { return std::get<TabulatedKernel>(family_); }

  /// Kernel value v(t), t > 0.
  double value(double t) const;

  /// Expansion terms with exponent below max_exponent.  For the Bessel
  /// family the terms r_k = p+q+2k, v_k = (-1)^k 2^{-2k-p}/(k! Gamma(k+p+1))
  /// are generated on demand; for tabulated kernels the stored terms are
  /// returned (with the stored remainder bound).
  KernelExpansion expansion_up_to(double max_exponent) const;

  /// True when l lies within tol of a resonant line r_k + 1/2.
  bool is_resonant(double l, double tol = 1e-9) const;

  /// Upper band edge for the meromorphic continuation: unbounded for the
  /// Bessel family, r_{N+1} + 1/2 for tabulated kernels.
  double band_limit() const;

  /// Phase velocity d(phase)/dt of the large-t oscillation (1 for the
  /// Bessel family, 0 for tabulated kernels).
  double oscillation_frequency() const;

 private:
  explicit KernelSpec(BesselPQ pq) : family_(pq) {}
  explicit KernelSpec(TabulatedKernel tk) : family_(std::move(tk)) {}

  std::variant<BesselPQ, TabulatedKernel> family_;
};

}  // namespace friedrichs::mellin
