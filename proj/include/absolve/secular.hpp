#pragma once

#include <vector>

#include "absolve/model.hpp"

namespace absolve {

// Self-adjoint extension parameter lambda in (-inf, +inf]. lambda = 0 keeps
// only the regular r^|j| solution, +inf only the irregular r^-|j| one.
class ExtensionParam {
 public:
  static ExtensionParam finite(double lambda);
  static ExtensionParam infinity() { return ExtensionParam(0.0, true); }

  bool is_infinite() const { return infinite_; }
  // Throws Error(domain) for the infinity sentinel.
  double value() const;

  friend bool operator==(const ExtensionParam&, const ExtensionParam&) = default;

 private:
  ExtensionParam(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

// Parameters of the two Kummer solutions at a given kappa:
//   a  = 1/2 + |j| - t,  b  = 1 + 2|j|
//   a' = 1/2 - |j| - t,  b' = 1 - 2|j|,   t = m_e eta' / kappa
// and x = 2 kappa r for the radius the set was built at.
struct KummerParams {
  double a = 0.0;
  double b = 1.0;
  double a_prime = 0.0;
  double b_prime = 1.0;
  double x = 0.0;
  double kappa = 0.0;
  double l_plus = 0.0;
  double l_minus = 0.0;
  double abs_j = 0.0;

  double coupling_ratio() const { return l_plus - abs_j; }  // t
};

KummerParams make_kummer_params(double kappa, double j, const PhysicalParams& params,
                                double r = 0.0);

// b_m / a_m = lambda (2 kappa)^(2|j|), fixed by the boundary condition at the
// origin. Throws Error(sector) for |j| >= 1/2 and Error(domain) for lambda = inf.
double coefficient_ratio(double kappa, const ExtensionParam& lambda, double j,
                         const PhysicalParams& params);

// Secular function whose zeros in kappa are the bound states:
//   finite lambda: Gamma(b)/Gamma(a) + lambda (2 kappa)^(2|j|) Gamma(b')/Gamma(a')
//   lambda = inf:  Gamma(b')/Gamma(a')
// written with reciprocal Gamma so it is finite everywhere.
double secular_function(double kappa, const ExtensionParam& lambda, double j,
                        const PhysicalParams& params);

// secular_function divided by the sum of the magnitude envelopes of its
// terms (the reflection amplitude Gamma(1-z)/pi replaces 1/Gamma(z) for
// z < 1/2). O(1) slope through each zero; used for residuals.
double secular_residual(double kappa, const ExtensionParam& lambda, double j,
                        const PhysicalParams& params);

struct SecularRoot {
  double kappa = 0.0;
  double residual = 0.0;
  ExtensionParam lambda = ExtensionParam::finite(0.0);
  double j = 0.0;
  int index = 0;  // 1 for the most bound state
};

inline constexpr double kSecularResidualTol = 1e-10;

// The `count` most bound roots (largest kappa first), bracketed by a scan in
// t = m_e eta'/kappa at 1e4 samples per unit up to t = 10 (count + 1) and
// refined by bisection. Returns fewer roots when the scan window holds fewer
// (none at all for eta = 0).
//
// lambda = 0 is the regular problem and accepts any j; finite nonzero lambda
// and lambda = inf need |j| < 1/2, and finite nonzero lambda also needs j != 0
// where the two Kummer solutions coincide.
std::vector<SecularRoot> solve_secular(const ExtensionParam& lambda, double j,
                                       const PhysicalParams& params, int count);

}  // namespace absolve
