#include "friedrichs/galerkin.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>

#include "friedrichs/errors.hpp"
#include "friedrichs/specfun.hpp"
#include "gauss.hpp"

namespace friedrichs::galerkin {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct QuadNode {
  double x = 0.0;
  double w = 0.0;
  int cell = 0;       // node lies in [nodes[cell], nodes[cell+1]]
  double phi_lo = 0.0;  // hat centered at `cell`
  double phi_hi = 0.0;  // hat centered at `cell + 1`
};

/// Per-cell quadrature resolving the kernel oscillation at the far edge of
/// the grid: at least 4 quadrature nodes per period of v(x * x_max).
std::vector<QuadNode> oscillation_nodes(const std::vector<double>& nodes,
                                        double frequency) {
  const double x_max = nodes.back();
  std::vector<QuadNode> out;
  for (std::size_t c = 0; c + 1 < nodes.size(); ++c) {
    const double a = nodes[c];
    const double b = nodes[c + 1];
    const double h = b - a;
    const auto required = std::max(
        4.0, std::ceil(4.0 * h * x_max * frequency / (2.0 * kPi)));
    if (required > 512.0) {
      throw OscillationError("assemble_v: grid too coarse for the kernel "
                             "oscillation at x_max");
    }
    const int panels = static_cast<int>(std::ceil(required / 8.0));
    for (int s = 0; s < panels; ++s) {
      const double pa = a + h * s / panels;
      const double pb = a + h * (s + 1) / panels;
      const double mid = 0.5 * (pa + pb);
      const double half = 0.5 * (pb - pa);
      for (int i = 0; i < 4; ++i) {
        for (double sign : {1.0, -1.0}) {
          QuadNode n;
          n.x = mid + sign * half * quad::kGl8X[i];
          n.w = half * quad::kGl8W[i];
          n.cell = static_cast<int>(c);
          n.phi_lo = (b - n.x) / h;
          n.phi_hi = (n.x - a) / h;
          out.push_back(n);
        }
      }
    }
  }
  return out;
}

/// Overlap-type matrix int w(x) phi_i phi_j with 8-point Gauss per cell.
Matrix weighted_overlap(const std::vector<double>& nodes,
                        const std::function<double(double)>& weight) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index c = 0; c + 1 < n; ++c) {
    const double a = nodes[c];
    const double b = nodes[c + 1];
    const double h = b - a;
    double ll = 0.0, lh = 0.0, hh = 0.0;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * h;
    for (int i = 0; i < 4; ++i) {
      for (double sign : {1.0, -1.0}) {
        const double x = mid + sign * half * quad::kGl8X[i];
        const double w = half * quad::kGl8W[i] * weight(x);
        const double lo = (b - x) / h;
        const double hi = (x - a) / h;
        ll += w * lo * lo;
        lh += w * lo * hi;
        hh += w * hi * hi;
      }
    }
    m(c, c) += ll;
    m(c, c + 1) += lh;
    m(c + 1, c) += lh;
    m(c + 1, c + 1) += hh;
  }
  return m;
}

/// The pure trigonometric members of the Bessel family, for which the
/// kernel form has corner-evaluable antiderivatives.
bool trig_kind(const mellin::KernelSpec& kernel, bool& is_sine) {
  if (!kernel.is_bessel()) return false;
  const auto& pq = kernel.pq();
  if (pq.q != 0.5) return false;
  if (pq.p == -0.5) { is_sine = false; return true; }
  if (pq.p == 0.5) { is_sine = true; return true; }
  return false;
}

/// int_0^u (sin t - (1 - cos t)/t) dt = (1 - cos u) - Cin(u), the mixed
/// antiderivative for the x*y cos(xy) rectangle integral; series form below
/// u = 4 since the two parts cancel to O(u^2).
double mixed_primitive_cos(double u) {
  if (u <= 4.0) {
    double sum = 0.0;
    double pow = u * u;    // u^{2k}
    double fact = 2.0;     // (2k)!
    for (int k = 1; k < 24; ++k) {
      const double term = pow * (2 * k - 1) / (2 * k * fact);
      sum += (k % 2 == 1) ? term : -term;
      pow *= u * u;
      fact *= (2 * k + 1) * (2 * k + 2);
      if (term < 1e-18) break;
    }
    return sum;
  }
  const auto sc = specfun::sin_cos_integrals(u);
  return (1.0 - std::cos(u)) - sc.cin;
}

/// int_0^u (sin t / t - cos t) dt = Si(u) - sin u, the x*y sin(xy)
/// counterpart.
double mixed_primitive_sin(double u) {
  if (u <= 4.0) {
    double sum = 0.0;
    double pow = u * u * u;  // u^{2k+1}
    double fact = 6.0;       // (2k+1)!
    for (int k = 1; k < 24; ++k) {
      const double term = pow * (2 * k) / ((2 * k + 1) * fact);
      sum += (k % 2 == 1) ? term : -term;
      pow *= u * u;
      fact *= (2 * k + 2) * (2 * k + 3);
      if (term < 1e-18) break;
    }
    return sum;
  }
  const auto sc = specfun::sin_cos_integrals(u);
  return sc.si - std::sin(u);
}

/// Kernel form for the sine/cosine kernels through exact rectangle
/// integrals: with F(x, y) = Si(xy) (cosine) or Cin(xy) (sine) one has
/// d2F/dxdy = v(xy) up to the normalization, and matching antiderivatives
/// exist for the x, y and xy hat-weight terms, so every cell-pair integral
/// is a corner difference.  No oscillation constraint: cost is O(n^2)
/// independent of x_max.
Matrix assemble_v_trig(const std::vector<double>& nodes, bool is_sine) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Matrix pa(n, n), pd(n, n), g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double u = nodes[i] * nodes[j];
      const auto sc = specfun::sin_cos_integrals(u);
      if (is_sine) {
        pa(i, j) = sc.cin;
        pd(i, j) = mixed_primitive_sin(u);
        g(i, j) = -std::sin(u);
      } else {
        pa(i, j) = sc.si;
        pd(i, j) = mixed_primitive_cos(u);
        g(i, j) = 2.0 * std::sin(0.5 * u) * std::sin(0.5 * u);  // 1 - cos u
      }
      pa(j, i) = pa(i, j);
      pd(j, i) = pd(i, j);
      g(j, i) = g(i, j);
    }
  }
  const double pref = std::sqrt(2.0 / kPi);
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index cx = 0; cx + 1 < n; ++cx) {
    const double a = nodes[cx], b = nodes[cx + 1], hx = b - a;
    for (Eigen::Index cy = 0; cy + 1 < n; ++cy) {
      const double aa = nodes[cy], bb = nodes[cy + 1], hy = bb - aa;
      if (b * bb - a * aa < 3.0) {
        // The phase barely moves across this cell pair: direct tensor
        // Gauss keeps the error relative to the (possibly tiny) entry,
        // where the corner differences below would lose absolute accuracy
        // to the 1/h hat slopes.
        const double midx = 0.5 * (a + b), halfx = 0.5 * hx;
        const double midy = 0.5 * (aa + bb), halfy = 0.5 * hy;
        double ll = 0.0, lh = 0.0, hl = 0.0, hh = 0.0;
        for (int i = 0; i < 4; ++i) {
          for (double sx : {1.0, -1.0}) {
            const double x = midx + sx * halfx * quad::kGl8X[i];
            const double wx = halfx * quad::kGl8W[i];
            const double lox = (b - x) / hx, hix = (x - a) / hx;
            for (int j = 0; j < 4; ++j) {
              for (double sy : {1.0, -1.0}) {
                const double y = midy + sy * halfy * quad::kGl8X[j];
                const double w =
                    wx * halfy * quad::kGl8W[j] *
                    (is_sine ? std::sin(x * y) : std::cos(x * y));
                ll += w * lox * (bb - y) / hy;
                lh += w * lox * (y - aa) / hy;
                hl += w * hix * (bb - y) / hy;
                hh += w * hix * (y - aa) / hy;
              }
            }
          }
        }
        m(cx, cy) += pref * ll;
        m(cx, cy + 1) += pref * lh;
        m(cx + 1, cy) += pref * hl;
        m(cx + 1, cy + 1) += pref * hh;
        continue;
      }
      const double p1 = pa(cx + 1, cy + 1) - pa(cx, cy + 1) -
                        pa(cx + 1, cy) + pa(cx, cy);
      const double pxy = pd(cx + 1, cy + 1) - pd(cx, cy + 1) -
                         pd(cx + 1, cy) + pd(cx, cy);
      const double px = (g(cx + 1, cy + 1) - g(cx, cy + 1)) / bb -
                        (g(cx + 1, cy) - g(cx, cy)) / aa;
      const double py = (g(cx + 1, cy + 1) - g(cx + 1, cy)) / b -
                        (g(cx, cy + 1) - g(cx, cy)) / a;
      for (int ix = 0; ix < 2; ++ix) {
        const double a1 = ix ? -a / hx : b / hx;
        const double b1 = ix ? 1.0 / hx : -1.0 / hx;
        for (int iy = 0; iy < 2; ++iy) {
          const double a2 = iy ? -aa / hy : bb / hy;
          const double b2 = iy ? 1.0 / hy : -1.0 / hy;
          m(cx + ix, cy + iy) +=
              pref * (a1 * a2 * p1 + b1 * a2 * px + a1 * b2 * py + b1 * b2 * pxy);
        }
      }
    }
  }
  m = 0.5 * (m + m.transpose()).eval();
  return m;
}

void check_nodes(const std::vector<double>& nodes) {
  if (nodes.size() < 9) throw SpecError("galerkin: needs at least 8 cells");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) {
      throw SpecError("galerkin: nodes must be strictly increasing");
    }
  }
  if (!(nodes.front() > 0.0)) throw SpecError("galerkin: nodes must be positive");
}

int inertia_from_factorization(const Matrix& a, const std::vector<lapack_int>& ipiv) {
  const auto n = a.rows();
  int count = 0;
  for (Eigen::Index i = 0; i < n;) {
    if (ipiv[i] > 0) {
      if (a(i, i) < 0.0) ++count;
      ++i;
    } else {
      const double p = a(i, i);
      const double r = a(i + 1, i + 1);
      const double q = a(i + 1, i);
      const double det = p * r - q * q;
      if (det < 0.0) {
        ++count;
      } else if (p + r < 0.0) {
        count += 2;
      }
      i += 2;
    }
  }
  return count;
}

}  // namespace

std::vector<double> build_grid(const GridSpec& spec) {
  if (!(spec.x_min > 0.0) || !(spec.x_max > spec.x_min)) {
    throw SpecError("build_grid: requires 0 < x_min < x_max");
  }
  if (!(spec.x_min < 1.0) || !(spec.x_max > 1.0)) {
    throw SpecError("build_grid: window must straddle x = 1");
  }
  if (spec.cells < 8) throw SpecError("build_grid: requires at least 8 cells");
  const double log_ratio = std::log(spec.x_max / spec.x_min);
  std::vector<double> nodes(spec.cells + 1);
  for (int i = 0; i <= spec.cells; ++i) {
    nodes[i] = spec.x_min * std::exp(log_ratio * i / spec.cells);
  }
  nodes.back() = spec.x_max;
  return nodes;
}

Matrix assemble_gram(const std::vector<double>& nodes) {
  check_nodes(nodes);
  return weighted_overlap(nodes, [](double) { return 1.0; });
}

Matrix assemble_h0(const std::vector<double>& nodes, double l) {
  check_nodes(nodes);
  if (!(l > 0.0)) throw SpecError("assemble_h0: l must be positive");
  return weighted_overlap(nodes, [l](double x) { return std::pow(x, 2.0 * l); });
}

Matrix assemble_v(const std::vector<double>& nodes, const mellin::KernelSpec& kernel) {
  check_nodes(nodes);
  bool is_sine = false;
  if (trig_kind(kernel, is_sine)) return assemble_v_trig(nodes, is_sine);
  const auto quad_nodes = oscillation_nodes(nodes, kernel.oscillation_frequency());
  const auto n = static_cast<Eigen::Index>(nodes.size());
  const auto q = quad_nodes.size();
  Matrix m = Matrix::Zero(n, n);
  std::vector<double> row(nodes.size());
  for (std::size_t k = 0; k < q; ++k) {
    const auto& nk = quad_nodes[k];
    // g_j = sum_m w_m v(x_k x_m) phi_j(x_m), accumulated sparsely.
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t mm = 0; mm < q; ++mm) {
      const auto& nm = quad_nodes[mm];
      const double val = nm.w * kernel.value(nk.x * nm.x);
      row[nm.cell] += val * nm.phi_lo;
      row[nm.cell + 1] += val * nm.phi_hi;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      m(nk.cell, j) += nk.w * nk.phi_lo * row[j];
      m(nk.cell + 1, j) += nk.w * nk.phi_hi * row[j];
    }
  }
  m = 0.5 * (m + m.transpose()).eval();
  return m;
}

FormMatrices assemble(const std::vector<double>& nodes, double l,
                      const mellin::KernelSpec& kernel) {
  FormMatrices f;
  f.nodes = nodes;
  f.gram = assemble_gram(nodes);
  f.h0 = assemble_h0(nodes, l);
  f.v = assemble_v(nodes, kernel);
  return f;
}

int negative_inertia_count(const FormMatrices& forms, double gamma, double epsilon) {
  if (epsilon < 0.0) throw SpecError("negative_inertia_count: epsilon must be >= 0");
  const auto n = forms.h0.rows();
  // Order unknowns by descending x: the matrix is then graded from the
  // large x^{2l} entries down to the tiny ones, which keeps the elimination
  // from mixing scales.
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto ri = n - 1 - i;
      const auto rj = n - 1 - j;
      a(i, j) = forms.h0(ri, rj) + gamma * forms.v(ri, rj) +
                epsilon * forms.gram(ri, rj);
    }
  }
  std::vector<lapack_int> ipiv(n);
  for (int attempt = 0; attempt < 2; ++attempt) {
    Matrix work = a;
    const auto info = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, work.data(), n,
                                     ipiv.data());
    if (info == 0) return inertia_from_factorization(work, ipiv);
    if (info < 0) throw FactorizationError("negative_inertia_count: bad argument");
    // Exact zero pivot: nudge the diagonal and retry once.
    const double jitter = 1e-13 * a.diagonal().cwiseAbs().maxCoeff();
    a.diagonal().array() += jitter;
  }
  throw FactorizationError("negative_inertia_count: singular pivot persisted");
}

int negative_count_eigensolve(const FormMatrices& forms, double gamma,
                              double epsilon) {
  const auto n = forms.h0.rows();
  Matrix a = forms.h0 + gamma * forms.v;
  Matrix b = forms.gram;
  // Congruence by diag(gram)^{-1/2} on both sides: the pencil eigenvalues
  // are unchanged and the Cholesky reduction inside the solver no longer
  // mixes the scales of the geometric grid.
  const Eigen::VectorXd d = b.diagonal().cwiseSqrt().cwiseInverse();
  a = d.asDiagonal() * a * d.asDiagonal();
  b = d.asDiagonal() * b * d.asDiagonal();
  std::vector<double> w(n);
  const auto info = LAPACKE_dsygvd(LAPACK_COL_MAJOR, 1, 'N', 'L',
                                   static_cast<lapack_int>(n), a.data(),
                                   static_cast<lapack_int>(n), b.data(),
                                   static_cast<lapack_int>(n), w.data());
  if (info != 0) {
    throw FactorizationError("negative_count_eigensolve: dsygvd failed");
  }
  int count = 0;
  for (double ev : w) {
    if (ev < -epsilon) ++count;
  }
  return count;
}

GalerkinReport refinement_verdict(const std::vector<GridSpec>& specs,
                                  const mellin::KernelSpec& kernel, double l,
                                  double gamma,
                                  const std::vector<double>& epsilons) {
  if (specs.size() < 3) {
    throw SpecError("refinement_verdict: needs at least 3 refinements");
  }
  if (epsilons.size() < 2) {
    throw SpecError("refinement_verdict: needs at least 2 epsilon values");
  }
  double eps_min = epsilons.front(), eps_max = epsilons.front();
  for (double e : epsilons) {
    if (e < 0.0) throw SpecError("refinement_verdict: epsilon must be >= 0");
    eps_min = std::min(eps_min, e);
    eps_max = std::max(eps_max, e);
  }
  if (!(eps_max > 0.0) || (eps_min > 0.0 && eps_max / eps_min < 100.0)) {
    throw SpecError("refinement_verdict: epsilon ladder must span two decades");
  }

  std::vector<std::vector<double>> grids;
  grids.reserve(specs.size());
  for (const auto& s : specs) grids.push_back(build_grid(s));
  for (std::size_t g = 1; g < grids.size(); ++g) {
    // Every coarse node must reappear in the finer grid (nested subspaces).
    std::size_t j = 0;
    for (double x : grids[g - 1]) {
      while (j < grids[g].size() && grids[g][j] < x * (1.0 - 1e-9)) ++j;
      if (j == grids[g].size() || std::abs(grids[g][j] - x) > 1e-9 * x) {
        throw SpecError("refinement_verdict: refinement sequence not nested");
      }
    }
  }

  GalerkinReport report;
  double scale = 0.0;
  std::vector<std::vector<int>> counts(specs.size());
  for (std::size_t g = 0; g < grids.size(); ++g) {
    const auto forms = assemble(grids[g], l, kernel);
    if (g == 0) {
      scale = (forms.h0.diagonal().array() / forms.gram.diagonal().array())
                  .maxCoeff();
    }
    for (double e : epsilons) {
      const int c = negative_inertia_count(forms, gamma, e * scale);
      counts[g].push_back(c);
      report.rows.push_back({specs[g].cells, e, c});
    }
  }

  // Min-max monotonicity: nondecreasing under refinement at fixed epsilon,
  // nonincreasing in epsilon at fixed grid.
  for (std::size_t j = 0; j < epsilons.size(); ++j) {
    for (std::size_t g = 1; g < counts.size(); ++g) {
      if (counts[g][j] < counts[g - 1][j]) report.monotone = false;
    }
  }
  for (const auto& level : counts) {
    for (std::size_t j = 0; j < epsilons.size(); ++j) {
      for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (epsilons[i] < epsilons[j] && level[i] < level[j]) {
          report.monotone = false;
        }
      }
    }
  }

  const auto& last = counts[counts.size() - 1];
  const auto& prev = counts[counts.size() - 2];
  bool settled = report.monotone;
  for (std::size_t j = 0; settled && j < epsilons.size(); ++j) {
    settled = last[j] == prev[j] && last[j] == last[0];
  }
  if (settled) {
    report.verdict = Verdict::finite;
    report.count = last[0];
    return report;
  }
  std::size_t j_min = 0;
  for (std::size_t j = 1; j < epsilons.size(); ++j) {
    if (epsilons[j] < epsilons[j_min]) j_min = j;
  }
  bool growing = true;
  for (std::size_t g = 1; g < counts.size(); ++g) {
    if (counts[g][j_min] <= counts[g - 1][j_min]) growing = false;
  }
  report.verdict = growing ? Verdict::likely_infinite : Verdict::inconclusive;
  return report;
}

void dump_matrix(const Matrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecError("dump_matrix: cannot open output file");
  const auto write_u64 = [&](std::uint64_t v) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = (v >> (8 * i)) & 0xff;
    out.write(reinterpret_cast<const char*>(bytes), 8);
  };
  write_u64(static_cast<std::uint64_t>(m.rows()));
  write_u64(static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double value = m(i, j);
      std::uint64_t bits = 0;
      static_assert(sizeof(bits) == sizeof(value));
      __builtin_memcpy(&bits, &value, 8);
      write_u64(bits);
    }
  }
  if (!out) throw SpecError("dump_matrix: write failed");
}

}  // namespace friedrichs::galerkin
