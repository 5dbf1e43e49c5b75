#include "absolve/secular.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "absolve/error.hpp"
#include "absolve/specfun.hpp"

namespace absolve {

namespace {

using specfun::gamma;
using specfun::reciprocal_gamma;

// Magnitude envelope of 1/Gamma(z): continuous at z = 1/2, free of the
// sin(pi z) zeros below it.
double rgamma_envelope(double z) {
  if (z >= 0.5) return reciprocal_gamma(z);
  return std::tgamma(1.0 - z) / std::numbers::pi;
}

void require_sector(double j, const char* what) {
  if (!(std::fabs(j) < 0.5)) {
    std::ostringstream msg;
    msg << what << " requires |j| < 1/2, got j = " << j;
    fail(ErrorCode::sector, msg.str());
  }
}

void require_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    fail(ErrorCode::domain, "kappa must be finite and positive");
}

void check_lambda_sector(const ExtensionParam& lambda, double j) {
  if (lambda.is_infinite()) {
    require_sector(j, "lambda = inf");
  } else if (lambda.value() != 0.0) {
    require_sector(j, "finite nonzero lambda");
  }
}

struct SecularTerms {
  double regular = 0.0;    // Gamma(b) / Gamma(a)
  double irregular = 0.0;  // lambda (2 kappa)^(2|j|) Gamma(b') / Gamma(a'), or the bare ratio at inf
  double regular_scale = 0.0;
  double irregular_scale = 0.0;
};

SecularTerms secular_terms(double kappa, const ExtensionParam& lambda, double j,
                           const PhysicalParams& params) {
  require_kappa(kappa);
  params.validate();
  check_lambda_sector(lambda, j);
  const KummerParams kp = make_kummer_params(kappa, j, params);
  SecularTerms terms;
  if (lambda.is_infinite()) {
    const double gb = gamma(kp.b_prime);
    terms.irregular = gb * reciprocal_gamma(kp.a_prime);
    terms.irregular_scale = std::fabs(gb) * rgamma_envelope(kp.a_prime);
    return terms;
  }
  const double gb = gamma(kp.b);
  terms.regular = gb * reciprocal_gamma(kp.a);
  terms.regular_scale = std::fabs(gb) * rgamma_envelope(kp.a);
  const double lam = lambda.value();
  if (lam != 0.0) {
    const double weight = lam * std::pow(2.0 * kappa, 2.0 * kp.abs_j) * gamma(kp.b_prime);
    terms.irregular = weight * reciprocal_gamma(kp.a_prime);
    terms.irregular_scale = std::fabs(weight) * rgamma_envelope(kp.a_prime);
  }
  return terms;
}

}  // namespace

ExtensionParam ExtensionParam::finite(double lambda) {
  if (!std::isfinite(lambda))
    fail(ErrorCode::invalid_argument, "finite extension parameter must be a finite number");
  return ExtensionParam(lambda, false);
}

double ExtensionParam::value() const {
  if (infinite_) fail(ErrorCode::domain, "extension parameter is infinite");
  return value_;
}

KummerParams make_kummer_params(double kappa, double j, const PhysicalParams& params,
                                double r) {
  require_kappa(kappa);
  const double abs_j = std::fabs(j);
  const double t = params.coupling() / kappa;
  KummerParams kp;
  kp.abs_j = abs_j;
  kp.kappa = kappa;
  kp.a = 0.5 + abs_j - t;
  kp.b = 1.0 + 2.0 * abs_j;
  kp.a_prime = 0.5 - abs_j - t;
  kp.b_prime = 1.0 - 2.0 * abs_j;
  kp.x = 2.0 * kappa * r;
  kp.l_plus = abs_j + t;
  kp.l_minus = abs_j - t;
  return kp;
}

double coefficient_ratio(double kappa, const ExtensionParam& lambda, double j,
                         const PhysicalParams& params) {
  require_kappa(kappa);
  params.validate();
  require_sector(j, "coefficient_ratio");
  return lambda.value() * std::pow(2.0 * kappa, 2.0 * std::fabs(j));
}

double secular_function(double kappa, const ExtensionParam& lambda, double j,
                        const PhysicalParams& params) {
  const SecularTerms t = secular_terms(kappa, lambda, j, params);
  return t.regular + t.irregular;
}

double secular_residual(double kappa, const ExtensionParam& lambda, double j,
                        const PhysicalParams& params) {
  const SecularTerms t = secular_terms(kappa, lambda, j, params);
  const double scale = t.regular_scale + t.irregular_scale;
  return (t.regular + t.irregular) / scale;
}

std::vector<SecularRoot> solve_secular(const ExtensionParam& lambda, double j,
                                       const PhysicalParams& params, int count) {
  if (count < 1) fail(ErrorCode::invalid_argument, "root count must be >= 1");
  params.validate();
  check_lambda_sector(lambda, j);
  if (!lambda.is_infinite() && lambda.value() != 0.0 && j == 0.0)
    fail(ErrorCode::sector,
         "at j = 0 the regular and irregular Kummer solutions coincide; "
         "finite nonzero lambda is not representable");

  std::vector<SecularRoot> roots;
  const double coupling = params.coupling();
  if (!(coupling > 0.0)) return roots;

  auto g = [&](double t) { return secular_residual(coupling / t, lambda, j, params); };
  auto accept = [&](double t) {
    const double kappa = coupling / t;
    SecularRoot root;
    root.kappa = kappa;
    root.residual = secular_residual(kappa, lambda, j, params);
    root.lambda = lambda;
    root.j = j;
    root.index = static_cast<int>(roots.size()) + 1;
    if (!(std::fabs(root.residual) <= kSecularResidualTol)) {
      std::ostringstream msg;
      msg << "secular root near t = " << t << " has residual " << root.residual;
      fail(ErrorCode::convergence, msg.str());
    }
    roots.push_back(root);
  };
  auto refine = [&](double lo, double glo, double hi) {
    for (int it = 0; it < 400; ++it) {
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
      const double mid = 0.5 * (lo + hi);
      const double gm = g(mid);
      if (gm == 0.0) return mid;
      if (std::isnan(gm)) fail(ErrorCode::convergence, "secular function is NaN in bracket");
      if ((gm < 0.0) == (glo < 0.0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  constexpr double kSamplesPerUnit = 1e4;
  constexpr double kStep = 1.0 / kSamplesPerUnit;
  const double t_cap = 10.0 * (count + 1);

  // Geometric pre-scan of (0, kStep] for very deep states, then the uniform scan.
  std::vector<double> ts;
  for (int k = 0; k <= 160; ++k) ts.push_back(1e-12 * std::pow(1e8, k / 160.0));
  const auto uniform_samples = static_cast<long>(t_cap * kSamplesPerUnit);

  double t_prev = 0.0;
  double g_prev = std::numeric_limits<double>::quiet_NaN();
  auto visit = [&](double t) {
    const double gt = g(t);
    if (gt == 0.0) {
      accept(t);
    } else if (!std::isnan(g_prev) && g_prev != 0.0 && (gt < 0.0) != (g_prev < 0.0)) {
      accept(refine(t_prev, g_prev, t));
    }
    t_prev = t;
    g_prev = gt;
  };
  for (double t : ts) {
    if (t >= kStep) break;
    visit(t);
    if (static_cast<int>(roots.size()) == count) return roots;
  }
  for (long k = 1; k <= uniform_samples; ++k) {
    visit(static_cast<double>(k) * kStep);
    if (static_cast<int>(roots.size()) == count) return roots;
  }
  return roots;
}

}  // namespace absolve
