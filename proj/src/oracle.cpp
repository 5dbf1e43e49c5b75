#include "absolve/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "absolve/error.hpp"

namespace absolve {

void RadialGrid::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
    fail(ErrorCode::invalid_argument, "radial grid needs 0 < r_min < r_max");
  if (points < 100) fail(ErrorCode::invalid_argument, "radial grid needs at least 100 points");
}

RadialGrid RadialGrid::refined() const {
  RadialGrid g = *this;
  g.points = 2 * points - 1;
  return g;
}

std::size_t TridiagonalPencil::count_below(double sigma) const {
  std::size_t negatives = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    d = diag[i] - sigma * weight[i] - (i > 0 ? offdiag[i - 1] * offdiag[i - 1] / d : 0.0);
    if (d == 0.0) d = -std::numeric_limits<double>::min();
    if (d < 0.0) ++negatives;
  }
  return negatives;
}

double TridiagonalPencil::eigenvalue(std::size_t k) const {
  if (k >= size()) fail(ErrorCode::invalid_argument, "eigenvalue index out of range");
  double lo = -1.0;
  while (count_below(lo) > k) lo *= 2.0;
  double hi = 1.0;
  while (count_below(hi) <= k) hi *= 2.0;
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (count_below(mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> TridiagonalPencil::dense_standard_form() const {
  const std::size_t n = size();
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = diag[i] / weight[i];
    if (i + 1 < n) {
      const double v = offdiag[i] / std::sqrt(weight[i] * weight[i + 1]);
      m[i * n + i + 1] = v;
      m[(i + 1) * n + i] = v;
    }
  }
  return m;
}

TridiagonalPencil discretize_h0(double j, const PhysicalParams& params, const RadialGrid& grid) {
  grid.validate();
  params.validate();
  const double coupling = params.coupling();
  const double j2 = j * j;
  TridiagonalPencil p;

  if (grid.spacing == GridSpacing::logarithmic) {
    const int n = grid.points - 1;  // last node carries the Dirichlet condition
    const double y0 = std::log(grid.r_min);
    const double h = (std::log(grid.r_max) - y0) / (grid.points - 1);
    const double inv_h2 = 1.0 / (h * h);
    p.diag.resize(n);
    p.weight.resize(n);
    p.r.resize(n);
    p.offdiag.assign(n - 1, -inv_h2);
    for (int i = 0; i < n; ++i) {
      const double r = std::exp(y0 + h * i);
      p.r[i] = r;
      p.diag[i] = 2.0 * inv_h2 + j2 - 2.0 * coupling * r;
      p.weight[i] = r * r;
    }
    // Ghost node F_-1 = F_1 - 2 h gamma F_0, row halved to stay symmetric.
    const double abs_j = std::fabs(j);
    const double c1 = -2.0 * coupling / (2.0 * abs_j + 1.0);
    const double r0 = grid.r_min;
    const double robin = abs_j + c1 * r0 / (1.0 + c1 * r0);
    p.diag[0] = (1.0 + h * robin) * inv_h2 + 0.5 * (j2 - 2.0 * coupling * r0);
    p.weight[0] = 0.5 * r0 * r0;
    return p;
  }

  const int n = grid.points - 2;
  const double h = (grid.r_max - grid.r_min) / (grid.points - 1);
  const double inv_h2 = 1.0 / (h * h);
  p.diag.resize(n);
  p.weight.assign(n, 1.0);
  p.r.resize(n);
  p.offdiag.assign(n - 1, -inv_h2);
  for (int i = 0; i < n; ++i) {
    const double r = grid.r_min + h * (i + 1);
    p.r[i] = r;
    p.diag[i] = 2.0 * inv_h2 + (j2 - 0.25) / (r * r) - 2.0 * coupling / r;
  }
  return p;
}

std::vector<OracleEigenvalue> oracle_regular_spectrum(double j, const PhysicalParams& params,
                                                      int n_max, const RadialGrid& grid) {
  if (n_max < 1) fail(ErrorCode::invalid_argument, "n_max must be >= 1");
  const RadialGrid fine_grid = grid.refined();
  const TridiagonalPencil coarse = discretize_h0(j, params, grid);
  const TridiagonalPencil fine = discretize_h0(j, params, fine_grid);
  const std::size_t bound = std::min({coarse.count_below(0.0), fine.count_below(0.0),
                                      static_cast<std::size_t>(n_max)});

  std::vector<OracleEigenvalue> out;
  for (std::size_t k = 0; k < bound; ++k) {
    const double e_coarse = coarse.eigenvalue(k);
    const double e_fine = fine.eigenvalue(k);
    const double e = (4.0 * e_fine - e_coarse) / 3.0;
    if (!(e < 0.0)) break;
    if (std::fabs(e - e_fine) > kRichardsonTol * std::fabs(e)) {
      std::ostringstream msg;
      msg << "two-grid extrapolation of level " << k + 1 << " moved the eigenvalue from "
          << e_fine << " to " << e << "; refine the grid";
      fail(ErrorCode::convergence, msg.str());
    }
    OracleEigenvalue ev;
    ev.kappa = std::sqrt(-e);
    ev.index = static_cast<int>(k) + 1;
    ev.grid = grid;
    ev.coarse_kappa = std::sqrt(std::max(0.0, -e_coarse));
    ev.fine_kappa = std::sqrt(std::max(0.0, -e_fine));
    out.push_back(ev);
  }
  return out;
}

}  // namespace absolve
