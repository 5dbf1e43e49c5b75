#pragma once

// Real-argument special functions used by the spectral solver: Gamma,
// reciprocal Gamma and the confluent hypergeometric function 1F1 (Kummer M).

namespace absolve::specfun {

struct EvalAccuracy {
  double rel_tol = 1e-16;
  int max_terms = 4000;

  void validate() const;
};

// |x| above which 1F1 is evaluated from its large-argument expansion.
inline constexpr double kAsymptoticSwitch = 30.0;

// sin(pi z) and cos(pi z) with exact zeros at the integers / half-integers.
double sinpi(double z);
double cospi(double z);

bool is_nonpositive_integer(double z) noexcept;

// Gamma(z). Throws Error(pole) for z in {0, -1, -2, ...}.
double gamma(double z);

// 1/Gamma(z); entire, exactly 0 at the nonpositive integers.
double reciprocal_gamma(double z);

// Kummer's function M(a, b, x) = 1F1(a; b; x).
//
// Terminating polynomial when a is a nonpositive integer. Otherwise the
// power series is used for |x| <= kAsymptoticSwitch, picking between the
// direct series and the Kummer-transformed one e^x M(b-a, b, -x) by their
// cancellation, and the large-argument expansion beyond.
double kummer_1f1(double a, double b, double x, const EvalAccuracy& acc = {});

// Number of nonzero terms in the terminating series of M(a, b, x) when a is
// a nonpositive integer.
int kummer_polynomial_terms(double a, double b, double x);

// Large positive x: M(a, b, x) ~ growing * e^x + decaying, with
//   growing  = Gamma(b)/Gamma(a)   x^(a-b) sum_k (b-a)_k (1-a)_k / (k! x^k)
//   decaying = Gamma(b)/Gamma(b-a) cos(pi a) x^(-a)
//              sum_k (a)_k (a-b+1)_k / (k! (-x)^k)
// Both sums are truncated at their smallest term. The decaying part uses the
// real reading cos(pi a) x^(-a) of (-x)^(-a); it is exact for polynomial
// cases and for combinations in which the e^x parts cancel.
struct AsymptoticTerms {
  double growing_coeff = 0.0;
  double decaying_coeff = 0.0;
};

AsymptoticTerms kummer_asymptotic(double a, double b, double x);

}  // namespace absolve::specfun
