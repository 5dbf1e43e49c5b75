#include "absolve/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "absolve/error.hpp"
#include "absolve/specfun.hpp"

namespace absolve {

namespace {

using specfun::gamma;
using specfun::kummer_1f1;
using specfun::reciprocal_gamma;

// e^(-x/2) M(a, b, x) to second order in x, kept in product form.
double damped_kummer_expansion(double a, double b, double x) {
  return (x * x - 4.0 * x + 8.0) / (16.0 * b * (b + 1.0)) *
         ((a * a + a) * x * x + 2.0 * (a * x + b) * (b + 1.0));
}

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorCode::domain, "radius must be finite and positive");
}

}  // namespace

double radial_solution(double r, const SolutionCoefficients& coeffs, const KummerParams& kp) {
  require_radius(r);
  const double x = 2.0 * kp.kappa * r;
  const double damping = std::exp(-0.5 * x);
  double value = 0.0;
  if (coeffs.a_m != 0.0)
    value += coeffs.a_m * std::pow(x, kp.abs_j) * damping * kummer_1f1(kp.a, kp.b, x);
  if (coeffs.b_m != 0.0)
    value += coeffs.b_m * std::pow(x, -kp.abs_j) * damping *
             kummer_1f1(kp.a_prime, kp.b_prime, x);
  return value;
}

double small_r_expansion(double r, const SolutionCoefficients& coeffs, const KummerParams& kp) {
  require_radius(r);
  const double x = 2.0 * kp.kappa * r;
  if (x > kSmallRLimit) {
    std::ostringstream msg;
    msg << "small-r expansion needs x = 2 kappa r <= " << kSmallRLimit << ", got " << x;
    fail(ErrorCode::domain, msg.str());
  }
  double value = 0.0;
  if (coeffs.a_m != 0.0)
    value += coeffs.a_m * std::pow(x, kp.abs_j) * damped_kummer_expansion(kp.a, kp.b, x);
  if (coeffs.b_m != 0.0)
    value += coeffs.b_m * std::pow(x, -kp.abs_j) *
             damped_kummer_expansion(kp.a_prime, kp.b_prime, x);
  return value;
}

BoundaryValues boundary_values(const SolutionCoefficients& coeffs, const KummerParams& kp) {
  if (!(kp.abs_j < 0.5)) {
    std::ostringstream msg;
    msg << "boundary values need |j| < 1/2, got |j| = " << kp.abs_j;
    fail(ErrorCode::sector, msg.str());
  }
  const double two_kappa = 2.0 * kp.kappa;
  return {coeffs.b_m * std::pow(two_kappa, -kp.abs_j), coeffs.a_m * std::pow(two_kappa, kp.abs_j)};
}

double boundary_condition_residual(const ExtensionParam& lambda, const BoundaryValues& bv) {
  if (lambda.is_infinite()) {
    const double scale = std::max(std::fabs(bv.f0), std::fabs(bv.f1));
    return scale == 0.0 ? 0.0 : std::fabs(bv.f1) / scale;
  }
  const double rhs = lambda.value() * bv.f1;
  const double scale = std::max(std::fabs(bv.f0), std::fabs(rhs));
  return scale == 0.0 ? 0.0 : std::fabs(bv.f0 - rhs) / scale;
}

BoundState make_bound_state(const SecularRoot& root, const PhysicalParams& params) {
  BoundState st;
  st.root = root;
  st.kummer = make_kummer_params(root.kappa, root.j, params);
  if (root.lambda.is_infinite()) {
    st.coeffs = {0.0, 1.0};
  } else if (root.lambda.value() == 0.0) {
    st.coeffs = {1.0, 0.0};
  } else {
    const KummerParams& kp = st.kummer;
    double a_m = gamma(kp.b_prime) * reciprocal_gamma(kp.a_prime);
    double b_m = -gamma(kp.b) * reciprocal_gamma(kp.a);
    const double scale = std::max(std::fabs(a_m), std::fabs(b_m));
    st.coeffs = {a_m / scale, b_m / scale};
  }
  return st;
}

double bound_state_value(double r, const BoundState& state) {
  require_radius(r);
  const KummerParams& kp = state.kummer;
  const double x = 2.0 * kp.kappa * r;
  if (x <= specfun::kAsymptoticSwitch) return radial_solution(r, state.coeffs, kp);

  const double damping = std::exp(-0.5 * x);
  double value = 0.0;
  if (state.coeffs.a_m != 0.0)
    value += state.coeffs.a_m * std::pow(x, kp.abs_j) * damping *
             specfun::kummer_asymptotic(kp.a, kp.b, x).decaying_coeff;
  if (state.coeffs.b_m != 0.0)
    value += state.coeffs.b_m * std::pow(x, -kp.abs_j) * damping *
             specfun::kummer_asymptotic(kp.a_prime, kp.b_prime, x).decaying_coeff;
  return value;
}

RadialProfile sample_bound_state(const BoundState& state, int points, double r_min,
                                 double r_max) {
  if (points < 2) fail(ErrorCode::invalid_argument, "profile needs at least two points");
  const double kappa = state.kummer.kappa;
  if (r_min <= 0.0) r_min = 1e-6 / kappa;
  if (r_max <= 0.0) r_max = 60.0 / kappa;
  if (!(r_max > r_min)) fail(ErrorCode::invalid_argument, "profile needs r_max > r_min");

  RadialProfile profile;
  profile.kappa = kappa;
  profile.coeffs = state.coeffs;
  profile.j = state.root.j;
  profile.r.resize(points);
  profile.value.resize(points);
  const double log_ratio = std::log(r_max / r_min);
  for (int i = 0; i < points; ++i) {
    const double r = i + 1 == points ? r_max : r_min * std::exp(log_ratio * i / (points - 1));
    profile.r[i] = r;
    profile.value[i] = bound_state_value(r, state);
  }
  return profile;
}

NormAndNodes normalize_and_count_nodes(const RadialProfile& profile) {
  const auto& r = profile.r;
  const auto& f = profile.value;
  if (r.size() < 2 || r.size() != f.size())
    fail(ErrorCode::invalid_argument, "profile needs matching r and F samples");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(f[i]) || !std::isfinite(r[i]) || r[i] <= 0.0)
      fail(ErrorCode::invalid_argument, "profile samples must be finite with r > 0");
    if (i > 0 && !(r[i] > r[i - 1]))
      fail(ErrorCode::invalid_argument, "profile radii must be strictly increasing");
  }
  if (!(profile.kappa > 0.0)) fail(ErrorCode::invalid_argument, "profile kappa must be positive");
  if (r.front() > 1e-4 / profile.kappa || r.back() < 30.0 / profile.kappa) {
    std::ostringstream msg;
    msg << "profile must cover [1e-4, 30] / kappa, got [" << r.front() << ", " << r.back() << "]";
    fail(ErrorCode::domain, msg.str());
  }

  NormAndNodes out;

  // Near the origin F^2 r behaves like a power of r; integrate it exactly.
  const double i0 = f[0] * f[0] * r[0];
  const double i1 = f[1] * f[1] * r[1];
  if (i0 > 0.0 && i1 > 0.0) {
    const double p = std::log(i1 / i0) / std::log(r[1] / r[0]);
    if (!(p > -1.0)) fail(ErrorCode::domain, "profile is not square integrable at the origin");
    out.norm += i0 * r[0] / (p + 1.0);
  }
  // Trapezoid in ln r: the integrand F^2 r^2 decays at both ends, so a
  // geometric mesh converges much faster than trapezoid in r.
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double g0 = f[i - 1] * f[i - 1] * r[i - 1] * r[i - 1];
    const double g1 = f[i] * f[i] * r[i] * r[i];
    out.norm += 0.5 * std::log(r[i] / r[i - 1]) * (g0 + g1);
  }

  // A run of exact zeros between samples of equal sign is a touch, not a node.
  std::size_t last = r.size();
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (f[i] == 0.0) continue;
    if (last != r.size() && (f[i] < 0.0) != (f[last] < 0.0)) {
      if (r[i] > 1.1 * r[last]) {
        std::ostringstream msg;
        msg << "sign change between r = " << r[last] << " and " << r[i]
            << " is not resolved (spacing above 10%)";
        fail(ErrorCode::resolution, msg.str());
      }
      ++out.nodes;
    }
    last = i;
  }
  return out;
}

}  // namespace absolve
