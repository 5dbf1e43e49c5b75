#include "absolve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "absolve/error.hpp"
#include "absolve/model.hpp"
#include "absolve/oracle.hpp"
#include "absolve/secular.hpp"
#include "absolve/specfun.hpp"
#include "absolve/spectrum.hpp"
#include "absolve/wavefunction.hpp"

namespace absolve {

namespace {

double rel_err(double got, double want) {
  const double scale = std::max(std::fabs(want), std::numeric_limits<double>::min());
  return std::fabs(got - want) / scale;
}

class Suite {
 public:
  Suite(const VerifyOptions& opt) : opt_(opt) {}

  bool wants(const std::string& group) const { return !opt_.only || *opt_.only == group; }

  template <class Fn>
  void run(const std::string& name, const std::string& group, double tolerance, Fn&& residual) {
    if (!wants(group)) return;
    CheckResult c{name, group, false, 0.0, tolerance};
    try {
      c.residual = residual();
      c.pass = c.residual <= tolerance;
    } catch (const Error&) {
      c.residual = std::numeric_limits<double>::infinity();
    }
    report_.pass = report_.pass && c.pass;
    report_.checks.push_back(std::move(c));
  }

  VerifyReport take() { return std::move(report_); }

 private:
  const VerifyOptions& opt_;
  VerifyReport report_;
};

// Fourth-order central differences of M(a, b, .) at x.
double kummer_ode_residual(double a, double b, double x) {
  const double h = 5e-3;
  auto y = [&](double t) { return specfun::kummer_1f1(a, b, t); };
  const double ym2 = y(x - 2 * h), ym1 = y(x - h), y0 = y(x), yp1 = y(x + h), yp2 = y(x + 2 * h);
  const double d1 = (-yp2 + 8 * yp1 - 8 * ym1 + ym2) / (12 * h);
  const double d2 = (-yp2 + 16 * yp1 - 30 * y0 + 16 * ym1 - ym2) / (12 * h * h);
  return std::fabs(x * d2 + (b - x) * d1 - a * y0) / std::max(1.0, std::fabs(y0));
}

void specfun_checks(Suite& s, double fault) {
  auto g = [fault](double z) { return specfun::gamma(z) + fault; };
  s.run("gamma_recurrence", "specfun", 1e-12, [&] {
    double worst = 0.0;
    for (int i = 0; i <= 199; ++i) {
      const double z = 0.1 + (20.0 - 0.1) * i / 199.0;
      worst = std::max(worst, rel_err(g(z + 1.0), z * g(z)));
    }
    return worst;
  });
  s.run("gamma_half_sqrt_pi", "specfun", 1e-12,
        [&] { return rel_err(g(0.5), std::sqrt(std::numbers::pi)); });
  s.run("reciprocal_gamma_product", "specfun", 1e-12, [&] {
    double worst = 0.0;
    for (double z : {-3.7, -1.2, 0.3, 1.0, 3.5, 7.25, 15.5})
      worst = std::max(worst, std::fabs(specfun::reciprocal_gamma(z) * g(z) - 1.0));
    return worst;
  });
  s.run("kummer_ode_residual", "specfun", 1e-8, [] {
    double worst = 0.0;
    for (double a : {-2.5, -0.7, 0.5, 1.3, 3.2})
      for (double b : {0.6, 1.4, 2.9})
        for (double x : {0.5, 3.0, 8.0, 15.0, 25.0})
          worst = std::max(worst, kummer_ode_residual(a, b, x));
    return worst;
  });
  s.run("kummer_transformation", "specfun", 1e-10, [] {
    double worst = 0.0;
    for (double a : {-2.5, -0.7, 0.5, 1.3, 3.2})
      for (double b : {0.6, 1.4, 2.9})
        for (double x : {-20.0, -7.5, -1.0, 0.5, 4.0, 12.0, 20.0})
          worst = std::max(worst, rel_err(std::exp(-x) * specfun::kummer_1f1(a, b, x),
                                          specfun::kummer_1f1(b - a, b, -x)));
    return worst;
  });
  s.run("kummer_series_vs_asymptotic_x30", "specfun", 1e-6, [] {
    double worst = 0.0;
    const double x = specfun::kAsymptoticSwitch;
    for (auto [a, b] : {std::pair{0.5, 2.0}, {1.5, 1.2}, {-0.3, 1.4}, {2.2, 0.6}}) {
      const auto t = specfun::kummer_asymptotic(a, b, x);
      worst = std::max(worst, rel_err(t.growing_coeff * std::exp(x) + t.decaying_coeff,
                                      specfun::kummer_1f1(a, b, x)));
    }
    return worst;
  });
}

void model_checks(Suite& s) {
  // beta is rounded to the ulp of 1 when phi is negative, so the round trip
  // is exact only up to a few eps of max(1, |phi|).
  s.run("flux_round_trip", "model", 4.0 * std::numeric_limits<double>::epsilon(), [] {
    double worst = 0.0;
    for (int i = -200; i <= 200; ++i) {
      const double phi = i * 0.0537;
      const FluxConfig f = decompose_flux(phi);
      const double back = static_cast<double>(f.n_integer) + f.beta;
      if (f.beta < 0.0 || f.beta >= 1.0) return 1.0;
      worst = std::max(worst, std::fabs(back - phi) / std::max(1.0, std::fabs(phi)));
    }
    return worst;
  });
  s.run("admissible_m_in_singular_sector", "model", 0.0, [] {
    double failures = 0.0;
    for (int i = -300; i <= 300; ++i) {
      const double phi = i * 0.0173;
      const auto ms = admissible_m(phi);
      if (ms.size() > 1) failures += 1.0;
      for (int m : ms)
        if (!is_singular_sector(effective_j(m, phi))) failures += 1.0;
    }
    return failures;
  });
}

void spectrum_checks(Suite& s) {
  const PhysicalParams atomic;
  s.run("ground_state_anchor", "spectrum", 1e-12, [&] {
    return std::fabs(energy_regular({1, 0, 1, Branch::regular}, atomic, decompose_flux(0.0)).energy + 2.0);
  });
  s.run("irregular_anchor", "spectrum", 1e-6, [&] {
    return rel_err(
        energy_irregular({1, 0, 1, Branch::irregular}, atomic, decompose_flux(0.49)).energy,
        -5000.0);
  });
  s.run("rotation_shift_exact", "spectrum", 0.0, [&] {
    double worst = 0.0;
    for (double omega : {-2.0, -1.0, 0.5, 1.0, 3.0})
      for (int m = -4; m <= 4; ++m)
        for (int s_ : {1, -1}) {
          PhysicalParams rot = atomic;
          rot.omega = omega;
          const FluxConfig flux = decompose_flux(0.37);
          const QuantumState st{2, m, s_, Branch::regular};
          const auto e0 = energy_regular(st, atomic, flux);
          const auto e1 = energy_regular(st, rot, flux);
          const double j = effective_j(m, flux.phi).value;
          worst = std::max(worst, std::fabs(e1.binding_energy - e0.binding_energy));
          worst = std::max(worst, std::fabs(e1.rotation_shift + rot.hbar * omega * (j + s_ / 2.0)));
        }
    return worst;
  });
  s.run("degeneracy_vs_pairwise", "spectrum", 0.0, [&] {
    double mismatches = 0.0;
    for (double phi : {1.0, 5.0, 0.3}) {
      const FluxConfig flux = decompose_flux(phi);
      std::vector<QuantumState> states;
      for (int m = -10; m <= 10; ++m)
        for (int s_ : {1, -1}) states.push_back({1, m, s_, Branch::regular});
      const auto groups = detect_degeneracies(states, atomic, flux);
      std::map<std::pair<int, int>, int> group_of;
      for (std::size_t g = 0; g < groups.size(); ++g)
        for (const auto& st : groups[g].members) group_of[{st.m, st.s}] = static_cast<int>(g);
      for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t k = i + 1; k < states.size(); ++k) {
          const double ei = energy_regular(states[i], atomic, flux).energy;
          const double ek = energy_regular(states[k], atomic, flux).energy;
          const bool equal = std::fabs(ei - ek) <= kDefaultDegeneracyTol;
          const auto a = group_of.find({states[i].m, states[i].s});
          const auto b = group_of.find({states[k].m, states[k].s});
          const bool grouped = a != group_of.end() && b != group_of.end() && a->second == b->second;
          if (equal != grouped) mismatches += 1.0;
        }
    }
    return mismatches;
  });
}

void secular_checks(Suite& s) {
  const PhysicalParams atomic;
  s.run("secular_regular_limit", "secular", 1e-10, [&] {
    double worst = 0.0;
    for (double j : {0.05, 0.2, 0.45}) {
      const auto roots = solve_secular(ExtensionParam::finite(0.0), j, atomic, 5);
      if (roots.size() != 5) return 1.0;
      for (const auto& r : roots)
        worst = std::max(worst, rel_err(r.kappa, atomic.coupling() / (r.index - 0.5 + j)));
    }
    return worst;
  });
  s.run("secular_irregular_limit", "secular", 1e-10, [&] {
    double worst = 0.0;
    for (double j : {0.05, 0.2, 0.45}) {
      const auto roots = solve_secular(ExtensionParam::infinity(), j, atomic, 5);
      if (roots.size() != 5) return 1.0;
      for (const auto& r : roots)
        worst = std::max(worst, rel_err(r.kappa, atomic.coupling() / (r.index - 0.5 - j)));
    }
    return worst;
  });
  s.run("secular_root_residuals", "secular", kSecularResidualTol, [&] {
    double worst = 0.0;
    for (double lam : {-3.0, -1.0, 0.5, 1.0, 4.0})
      for (double j : {0.1, 0.3})
        for (const auto& r : solve_secular(ExtensionParam::finite(lam), j, atomic, 4))
          worst = std::max(worst, std::fabs(r.residual));
    return worst;
  });
}

void wavefunction_checks(Suite& s) {
  const PhysicalParams atomic;
  s.run("boundary_closure", "wavefunction", 1e-8, [&] {
    double worst = 0.0;
    for (double lam : {-1.0, 1.0})
      for (double j : {0.2, 0.4})
        for (const auto& r : solve_secular(ExtensionParam::finite(lam), j, atomic, 4)) {
          const BoundState st = make_bound_state(r, atomic);
          const BoundaryValues bv = boundary_values(st.coeffs, st.kummer);
          worst = std::max(worst, boundary_condition_residual(r.lambda, bv));
          worst = std::max(worst, rel_err(lam * bv.f0, bv.f1));
        }
    return worst;
  });
  s.run("node_count_equals_index_minus_one", "wavefunction", 0.0, [&] {
    double mismatches = 0.0;
    for (auto lam : {ExtensionParam::finite(-1.0), ExtensionParam::finite(0.0),
                     ExtensionParam::finite(1.0), ExtensionParam::infinity()})
      for (const auto& r : solve_secular(lam, 0.2, atomic, 4)) {
        const auto nn = normalize_and_count_nodes(sample_bound_state(make_bound_state(r, atomic)));
        if (nn.nodes != r.index - 1 || !(nn.norm > 0.0) || !std::isfinite(nn.norm))
          mismatches += 1.0;
      }
    return mismatches;
  });
  s.run("irregular_norm_mesh_convergence", "wavefunction", 1e-6, [&] {
    const auto roots = solve_secular(ExtensionParam::infinity(), 0.45, atomic, 1);
    const BoundState st = make_bound_state(roots.at(0), atomic);
    const double coarse = normalize_and_count_nodes(sample_bound_state(st, 4000)).norm;
    const double fine = normalize_and_count_nodes(sample_bound_state(st, 8000)).norm;
    return rel_err(coarse, fine);
  });
}

void oracle_checks(Suite& s) {
  const PhysicalParams atomic;
  s.run("oracle_vs_closed_form", "oracle", 1e-6, [&] {
    double worst = 0.0;
    for (double j : {0.0, 0.25, 0.75, 1.5}) {
      const auto levels = oracle_regular_spectrum(j, atomic, 3);
      if (levels.size() != 3) return 1.0;
      for (const auto& ev : levels)
        worst = std::max(worst, rel_err(ev.kappa, atomic.coupling() / (ev.index - 0.5 + j)));
    }
    return worst;
  });
}

}  // namespace

const std::vector<std::string>& verify_groups() {
  static const std::vector<std::string> groups{"specfun", "model",        "spectrum",
                                               "secular", "wavefunction", "oracle"};
  return groups;
}

VerifyReport run_verification(const VerifyOptions& options) {
  if (options.only) {
    const auto& g = verify_groups();
    if (std::find(g.begin(), g.end(), *options.only) == g.end())
      fail(ErrorCode::invalid_argument, "unknown verification group '" + *options.only + "'");
  }
  Suite s(options);
  specfun_checks(s, options.gamma_fault);
  model_checks(s);
  spectrum_checks(s);
  secular_checks(s);
  wavefunction_checks(s);
  oracle_checks(s);
  return s.take();
}

}  // namespace absolve
