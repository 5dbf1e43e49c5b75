#pragma once

#include <vector>

#include "absolve/model.hpp"
#include "absolve/secular.hpp"

namespace absolve {

// Weights of the regular x^|j| and irregular x^-|j| Kummer solutions.
struct SolutionCoefficients {
  double a_m = 1.0;
  double b_m = 0.0;
};

// F(r) = a_m x^|j| e^(-x/2) M(a, b, x) + b_m x^-|j| e^(-x/2) M(a', b', x),
// x = 2 kappa r, with kappa and the Kummer parameters taken from kp.
double radial_solution(double r, const SolutionCoefficients& coeffs, const KummerParams& kp);

// Second-order product expansion of F near the origin,
//   e^(-x/2) M(a, b, x) ~ (x^2 - 4x + 8) [(a^2 + a) x^2 + 2(ax + b)(b + 1)] / (16 b (b + 1))
// (primed parameters for the irregular part). Requires x <= 0.1.
double small_r_expansion(double r, const SolutionCoefficients& coeffs, const KummerParams& kp);

inline constexpr double kSmallRLimit = 0.1;

// f0 = lim r^|j| F,  f1 = lim r^-|j| (F - f0 r^-|j|).
struct BoundaryValues {
  double f0 = 0.0;
  double f1 = 0.0;
};

// Leading-order coefficients: f0 = b_m (2 kappa)^-|j|, f1 = a_m (2 kappa)^|j|.
// The next irregular contribution to f1 is b_m (2 kappa)^(1-|j|) (a'/b' - 1/2)
// r^(1-2|j|), which vanishes at the origin for |j| < 1/2.
BoundaryValues boundary_values(const SolutionCoefficients& coeffs, const KummerParams& kp);

// Relative violation of the boundary condition f0 = lambda f1 implied by
// b_m / a_m = lambda (2 kappa)^(2|j|); for lambda = inf the condition is f1 = 0.
double boundary_condition_residual(const ExtensionParam& lambda, const BoundaryValues& bv);

// A normalizable solution at a secular root. For finite nonzero lambda the
// coefficients come from the decay condition at infinity,
//   a_m = Gamma(b')/Gamma(a'),  b_m = -Gamma(b)/Gamma(a),
// so that the boundary condition is an independent check on the root.
struct BoundState {
  SecularRoot root;
  KummerParams kummer;
  SolutionCoefficients coeffs;
};

BoundState make_bound_state(const SecularRoot& root, const PhysicalParams& params);

// Evaluates the bound state. Beyond x = 30 the exponentially growing parts of
// the two Kummer functions are dropped (their coefficients cancel by
// construction) and the recessive expansion is used.
double bound_state_value(double r, const BoundState& state);

struct RadialProfile {
  std::vector<double> r;
  std::vector<double> value;
  double kappa = 0.0;
  SolutionCoefficients coeffs;
  double j = 0.0;
};

// Geometric mesh on [r_min, r_max]; defaults span [1e-6, 60] / kappa.
RadialProfile sample_bound_state(const BoundState& state, int points = 6000, double r_min = 0.0,
                                 double r_max = 0.0);

struct NormAndNodes {
  double norm = 0.0;
  int nodes = 0;
};

// norm = int_0^inf F^2 r dr (trapezoid in ln r on the samples plus a power-law head
// below r_min); nodes = strict sign changes. Requires r_min <= 1e-4/kappa and
// r_max >= 30/kappa. Throws Error(resolution) when a sign change sits in an
// interval with r_(i+1) / r_i > 1.1.
NormAndNodes normalize_and_count_nodes(const RadialProfile& profile);

}  // namespace absolve
