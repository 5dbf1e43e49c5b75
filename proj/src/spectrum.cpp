#include "absolve/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "absolve/error.hpp"

namespace absolve {

namespace {

SpectralResult closed_form(const QuantumState& state, const PhysicalParams& params,
                           const FluxConfig& flux, double denominator) {
  const double j = effective_j(state.m, flux.phi).value;
  SpectralResult out;
  out.state = state;
  out.provenance = Provenance::closed_form;
  out.binding_energy = -(params.mass * params.eta * params.eta) /
                       (2.0 * params.hbar * params.hbar * denominator * denominator);
  out.rotation_shift = rotation_shift(j, state.s, params);
  out.energy = out.binding_energy + out.rotation_shift;
  out.kappa = params.coupling() / denominator;
  out.exists = out.kappa > 0.0 &&
               binding_discriminant(out.energy, j, state.s, params) < 0.0;
  return out;
}

}  // namespace

const char* to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::closed_form: return "closed_form";
    case Provenance::secular: return "secular";
    case Provenance::oracle: return "oracle";
  }
  return "unknown";
}

double rotation_shift(double j, int s, const PhysicalParams& params) {
  return -params.hbar * params.omega * (j + 0.5 * s);
}

double binding_discriminant(double energy, double j, int s, const PhysicalParams& params) {
  return 2.0 * params.mass * energy / (params.hbar * params.hbar) +
         (2.0 * params.mass * params.omega / params.hbar) * (j + 0.5 * s);
}

double energy_of_kappa(double kappa, double j, int s, const PhysicalParams& params) {
  return -(params.hbar * params.hbar * kappa * kappa) / (2.0 * params.mass) +
         rotation_shift(j, s, params);
}

SpectralResult energy_regular(const QuantumState& state, const PhysicalParams& params,
                              const FluxConfig& flux) {
  validate(state);
  params.validate();
  const double abs_j = std::fabs(effective_j(state.m, flux.phi).value);
  QuantumState tagged = state;
  tagged.branch = Branch::regular;
  return closed_form(tagged, params, flux, state.n - 0.5 + abs_j);
}

SpectralResult energy_irregular(const QuantumState& state, const PhysicalParams& params,
                                const FluxConfig& flux) {
  validate(state);
  params.validate();
  const EffectiveMomentum j = effective_j(state.m, flux.phi);
  if (!is_singular_sector(j)) {
    std::ostringstream msg;
    msg << "irregular branch requires |j| < 1/2, got j = " << j.value << " (m = " << state.m
        << ", phi = " << flux.phi << ")";
    fail(ErrorCode::sector, msg.str());
  }
  QuantumState tagged = state;
  tagged.branch = Branch::irregular;
  return closed_form(tagged, params, flux, state.n - 0.5 - std::fabs(j.value));
}

SpectralResult closed_form_energy(const QuantumState& state, const PhysicalParams& params,
                                  const FluxConfig& flux) {
  return state.branch == Branch::regular ? energy_regular(state, params, flux)
                                         : energy_irregular(state, params, flux);
}

double kappa_of_energy(double energy, const QuantumState& state, const PhysicalParams& params,
                       const FluxConfig& flux) {
  params.validate();
  const double j = effective_j(state.m, flux.phi).value;
  const double disc = binding_discriminant(energy, j, state.s, params);
  if (!(disc < 0.0)) {
    std::ostringstream msg;
    msg << "E = " << energy << " is not bound: 2mE/hbar^2 + (2m Omega/hbar)(j+s/2) = " << disc
        << " >= 0";
    fail(ErrorCode::existence, msg.str());
  }
  return std::sqrt(-disc);
}

std::vector<DegeneracyGroup> detect_degeneracies(std::span<const QuantumState> states,
                                                 const PhysicalParams& params,
                                                 const FluxConfig& flux, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::invalid_argument, "degeneracy tolerance must be > 0");

  std::vector<std::pair<double, std::size_t>> levels;
  levels.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const QuantumState& st = states[i];
    if (st.branch == Branch::irregular &&
        !is_singular_sector(effective_j(st.m, flux.phi)))
      continue;
    levels.emplace_back(closed_form_energy(st, params, flux).energy, i);
  }
  std::sort(levels.begin(), levels.end());

  std::vector<DegeneracyGroup> groups;
  std::size_t start = 0;
  while (start < levels.size()) {
    std::size_t end = start + 1;
    while (end < levels.size() && levels[end].first - levels[start].first <= tol) ++end;
    if (end - start > 1) {
      std::vector<std::size_t> idx;
      for (std::size_t k = start; k < end; ++k) idx.push_back(levels[k].second);
      std::sort(idx.begin(), idx.end());
      DegeneracyGroup g;
      g.energy = levels[start].first;
      g.tolerance = tol;
      for (std::size_t i : idx) g.members.push_back(states[i]);
      groups.push_back(std::move(g));
    }
    start = end;
  }
  return groups;
}

}  // namespace absolve
