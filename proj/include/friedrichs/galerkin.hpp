#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "friedrichs/kernel.hpp"

namespace friedrichs::galerkin {

using Matrix = Eigen::MatrixXd;

struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  int cells = 0;
};

/// Geometric node sequence x_min * rho^i, i = 0..cells, with
/// rho = (x_max/x_min)^{1/cells}.
std::vector<double> build_grid(const GridSpec& spec);

/// Galerkin matrices of the quadratic form on the hat-function basis over
/// the grid nodes (one hat per node, boundary hats truncated).
struct FormMatrices {
  Matrix h0;    // weight x^{2l}
  Matrix v;     // kernel form v(xy)
  Matrix gram;  // plain overlap
  std::vector<double> nodes;
};

/// Overlap matrix int phi_i phi_j (tridiagonal).
Matrix assemble_gram(const std::vector<double>& nodes);

/// Weighted overlap int x^{2l} phi_i phi_j, per-cell 8-point Gauss.
Matrix assemble_h0(const std::vector<double>& nodes, double l);

/// Kernel form int int v(xy) phi_i(x) phi_j(y) dx dy by tensor quadrature;
/// the per-cell node count follows the local oscillation wavelength of the
/// kernel at the far edge of the grid.  Throws OscillationError when a
/// cell would need more than 512 nodes.
Matrix assemble_v(const std::vector<double>& nodes, const mellin::KernelSpec& kernel);

FormMatrices assemble(const std::vector<double>& nodes, double l,
                      const mellin::KernelSpec& kernel);

/// Number of pencil eigenvalues below -epsilon: the negative inertia of
/// h0 + gamma v + epsilon gram from a symmetric indefinite (Bunch-Kaufman)
/// factorization; epsilon is an absolute shift, epsilon >= 0.
int negative_inertia_count(const FormMatrices& forms, double gamma, double epsilon);

/// Same count through a full generalized symmetric eigensolve
/// (independent cross-check, meant for small matrices).
int negative_count_eigensolve(const FormMatrices& forms, double gamma,
                              double epsilon);

enum class Verdict { finite, likely_infinite, inconclusive };

struct CountRow {
  int cells = 0;
  double epsilon = 0.0;  // relative to the h0/gram diagonal-ratio scale
  int count = 0;
};

struct GalerkinReport {
  std::vector<CountRow> rows;
  Verdict verdict = Verdict::inconclusive;
  long long count = 0;  // meaningful when verdict == finite
  bool monotone = true;  // min-max monotonicity held along the sweep
};

/// Runs the count over a nested refinement sequence and an epsilon ladder
/// (relative to the coarsest-level diagonal scale, shared across levels).
/// Finite(n): last two levels agree at every epsilon.  LikelyInfinite:
/// counts strictly increase across all refinements at the smallest
/// epsilon.  Otherwise Inconclusive, with the raw table reported.
GalerkinReport refinement_verdict(const std::vector<GridSpec>& specs,
                                  const mellin::KernelSpec& kernel, double l,
                                  double gamma,
                                  const std::vector<double>& epsilons);

/// Dense binary dump: two 8-byte little-endian unsigned dimensions, then
/// row-major 8-byte floats.
void dump_matrix(const Matrix& m, const std::string& path);

}  // namespace friedrichs::galerkin
