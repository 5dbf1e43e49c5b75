#pragma once

#include <vector>

#include "absolve/model.hpp"

namespace absolve {

enum class GridSpacing { uniform, logarithmic };

struct RadialGrid {
  double r_min = 1e-5;
  double r_max = 200.0;
  int points = 4000;
  GridSpacing spacing = GridSpacing::logarithmic;

  void validate() const;
  // Same end points, spacing halved (2 points - 1 nodes).
  RadialGrid refined() const;
};

// Discrete radial operator as a symmetric pencil (A, B): A tridiagonal,
// B diagonal and positive, with eigenvalues e = -kappa^2 of A u = e B u.
//
// logarithmic: unknowns F(y_i), y = ln r, from
//   -F_yy + (j^2 - 2 m eta' r) F = e r^2 F,
// Robin condition F_y = gamma F at r_min matching the regular solution
// r^|j| (1 - 2 m eta' r / (2|j| + 1)), Dirichlet at r_max.
// uniform: unknowns u = sqrt(r) F on r_i, from
//   -u'' + ((j^2 - 1/4)/r^2 - 2 m eta'/r) u = e u, Dirichlet at both ends.
struct TridiagonalPencil {
  std::vector<double> diag;     // A_ii
  std::vector<double> offdiag;  // A_i,i+1 = A_i+1,i
  std::vector<double> weight;   // B_ii
  std::vector<double> r;        // radius of each unknown

  std::size_t size() const { return diag.size(); }
  // Number of eigenvalues strictly below sigma (Sylvester inertia of A - sigma B).
  std::size_t count_below(double sigma) const;
  // k-th smallest eigenvalue (0-based) by Sturm bisection.
  double eigenvalue(std::size_t k) const;
  // B^-1/2 A B^-1/2 as a dense row-major matrix; for tests on small grids.
  std::vector<double> dense_standard_form() const;
};

TridiagonalPencil discretize_h0(double j, const PhysicalParams& params, const RadialGrid& grid);

struct OracleEigenvalue {
  double kappa = 0.0;
  int index = 0;  // 1 = most bound
  RadialGrid grid;
  double coarse_kappa = 0.0;  // kappa on grid alone
  double fine_kappa = 0.0;    // kappa on grid.refined()
};

// Relative disagreement between the fine grid and the Richardson value above
// which the extrapolation is rejected.
inline constexpr double kRichardsonTol = 1e-3;

// Most bound n_max levels of the regular problem, from eigenvalues on grid and
// grid.refined() combined as (4 e_fine - e_coarse) / 3. Returns fewer levels
// when fewer are bound on either grid. Throws Error(convergence) when a
// Richardson correction exceeds kRichardsonTol.
std::vector<OracleEigenvalue> oracle_regular_spectrum(double j, const PhysicalParams& params,
                                                      int n_max, const RadialGrid& grid = {});

}  // namespace absolve
