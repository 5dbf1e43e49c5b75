#include "absolve/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "absolve/error.hpp"

namespace absolve::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

struct SeriesSum {
  long double sum = 1.0L;
  long double largest_term = 1.0L;
  int nonzero_terms = 1;

  long double condition() const {
    return sum == 0.0L ? HUGE_VALL : largest_term / std::fabs(sum);
  }
};

// Power series of M(a, b, x), accumulated in extended precision.
SeriesSum power_series(double a, double b, double x, const EvalAccuracy& acc,
                       bool until_terminated = false) {
  SeriesSum s;
  long double term = 1.0L;
  const long double la = a;
  const long double lb = b;
  const long double lx = x;
  for (int k = 0; k < acc.max_terms; ++k) {
    term *= (la + k) * lx / ((lb + k) * (k + 1));
    if (term == 0.0L) return s;  // terminated polynomial
    s.sum += term;
    s.largest_term = std::max(s.largest_term, std::fabs(term));
    ++s.nonzero_terms;
    if (until_terminated) continue;
    const long double next_ratio =
        std::fabs((la + k + 1) * lx / ((lb + k + 1) * (k + 2)));
    if (std::fabs(term) <= acc.rel_tol * std::fabs(s.sum) && next_ratio < 0.5L)
      return s;
  }
  std::ostringstream msg;
  msg << "1F1(" << a << ", " << b << ", " << x << ") did not reach rel_tol "
      << acc.rel_tol << " within " << acc.max_terms << " terms";
  fail(ErrorCode::convergence, msg.str());
}

// sum_k (p)_k (q)_k z^k / k!, truncated before the terms start growing.
double asymptotic_sum(double p, double q, double z) {
  long double term = 1.0L;
  long double sum = 1.0L;
  long double previous = HUGE_VALL;
  for (int k = 0; k < 400; ++k) {
    const long double next = term * (p + k) * (q + k) * z / (k + 1);
    if (next == 0.0L) break;
    if (std::fabs(next) >= previous) break;
    previous = std::fabs(next);
    term = next;
    sum += term;
    if (std::fabs(term) < 1e-19L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

}  // namespace

void EvalAccuracy::validate() const {
  if (!(rel_tol > 0.0)) fail(ErrorCode::invalid_argument, "rel_tol must be > 0");
  if (max_terms < 1) fail(ErrorCode::invalid_argument, "max_terms must be >= 1");
}

double sinpi(double z) {
  if (!std::isfinite(z)) return std::numeric_limits<double>::quiet_NaN();
  // Reduce to r in [-1, 1) with sin(pi z) = sin(pi r); fmod is exact.
  double r = std::fmod(z, 2.0);
  if (r >= 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r == 0.0 || r == -1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  return std::sin(kPi * r);
}

double cospi(double z) {
  if (!std::isfinite(z)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::fmod(std::fabs(z), 2.0);
  if (r == 0.5 || r == 1.5) return 0.0;
  if (r == 0.0) return 1.0;
  if (r == 1.0) return -1.0;
  return std::cos(kPi * r);
}

bool is_nonpositive_integer(double z) noexcept {
  return z <= 0.0 && std::floor(z) == z;
}

double gamma(double z) {
  if (std::isnan(z)) fail(ErrorCode::invalid_argument, "gamma: NaN argument");
  if (is_nonpositive_integer(z)) {
    std::ostringstream msg;
    msg << "gamma: pole at z = " << z;
    fail(ErrorCode::pole, msg.str());
  }
  if (z >= 0.5) return std::tgamma(z);
  // Reflection keeps the sign and the accuracy near the poles under control.
  return kPi / (sinpi(z) * std::tgamma(1.0 - z));
}

double reciprocal_gamma(double z) {
  if (std::isnan(z)) return z;
  if (is_nonpositive_integer(z)) return 0.0;
  if (z >= 0.5) {
    if (z > 171.0) return 0.0;
    return 1.0 / std::tgamma(z);
  }
  return sinpi(z) * std::tgamma(1.0 - z) / kPi;
}

AsymptoticTerms kummer_asymptotic(double a, double b, double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    fail(ErrorCode::domain, "kummer_asymptotic: x must be finite and positive");
  const double gamma_b = gamma(b);
  AsymptoticTerms out;
  const double rg_a = reciprocal_gamma(a);
  if (rg_a != 0.0)
    out.growing_coeff =
        gamma_b * rg_a * std::pow(x, a - b) * asymptotic_sum(b - a, 1.0 - a, 1.0 / x);
  const double rg_ba = reciprocal_gamma(b - a);
  if (rg_ba != 0.0)
    out.decaying_coeff = gamma_b * rg_ba * cospi(a) * std::pow(x, -a) *
                         asymptotic_sum(a, a - b + 1.0, -1.0 / x);
  return out;
}

double kummer_1f1(double a, double b, double x, const EvalAccuracy& acc) {
  acc.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(x))
    fail(ErrorCode::invalid_argument, "1F1: non-finite argument");
  if (is_nonpositive_integer(b)) {
    std::ostringstream msg;
    msg << "1F1: b = " << b << " is a nonpositive integer";
    fail(ErrorCode::domain, msg.str());
  }
  if (x == 0.0) return 1.0;

  if (is_nonpositive_integer(a)) {
    EvalAccuracy poly = acc;
    poly.max_terms = std::max(acc.max_terms, static_cast<int>(-a) + 2);
    return static_cast<double>(power_series(a, b, x, poly, true).sum);
  }

  if (x > kAsymptoticSwitch) {
    const AsymptoticTerms t = kummer_asymptotic(a, b, x);
    double growing = 0.0;
    if (t.growing_coeff != 0.0)
      growing = std::copysign(std::exp(x + std::log(std::fabs(t.growing_coeff))),
                              t.growing_coeff);
    return growing + t.decaying_coeff;
  }
  if (x < -kAsymptoticSwitch) return std::exp(x) * kummer_1f1(b - a, b, -x, acc);

  const SeriesSum direct = power_series(a, b, x, acc);
  if (direct.condition() <= 1e2L) return static_cast<double>(direct.sum);
  const SeriesSum transformed = power_series(b - a, b, -x, acc);
  if (transformed.condition() < direct.condition())
    return static_cast<double>(std::exp(static_cast<long double>(x)) * transformed.sum);
  return static_cast<double>(direct.sum);
}

int kummer_polynomial_terms(double a, double b, double x) {
  if (!is_nonpositive_integer(a) || is_nonpositive_integer(b))
    fail(ErrorCode::domain, "kummer_polynomial_terms: a must be a nonpositive integer");
  EvalAccuracy acc;
  acc.max_terms = static_cast<int>(-a) + 2;
  return power_series(a, b, x, acc, true).nonzero_terms;
}

}  // namespace absolve::specfun
