#pragma once

#include <span>
#include <vector>

#include "absolve/model.hpp"

namespace absolve {

enum class Provenance { closed_form, secular, oracle };

const char* to_string(Provenance p) noexcept;

// One bound level. energy is always binding_energy + rotation_shift, where
// the shift -hbar*Omega*(j + s/2) is the only Omega-dependent piece.
struct SpectralResult {
  double energy = 0.0;
  double kappa = 0.0;
  bool exists = false;
  QuantumState state;
  Provenance provenance = Provenance::closed_form;
  double binding_energy = 0.0;
  double rotation_shift = 0.0;
};

// -hbar * Omega * (j + s/2).
double rotation_shift(double j, int s, const PhysicalParams& params);

// 2 m E / hbar^2 + (2 m Omega / hbar)(j + s/2); negative for bound states.
double binding_discriminant(double energy, double j, int s, const PhysicalParams& params);

// E = -hbar^2 kappa^2 / (2 m) - hbar Omega (j + s/2).
double energy_of_kappa(double kappa, double j, int s, const PhysicalParams& params);

SpectralResult energy_regular(const QuantumState& state, const PhysicalParams& params,
                              const FluxConfig& flux);

// Throws Error(sector) unless |m + phi| < 1/2.
SpectralResult energy_irregular(const QuantumState& state, const PhysicalParams& params,
                                const FluxConfig& flux);

// Dispatches on state.branch.
SpectralResult closed_form_energy(const QuantumState& state, const PhysicalParams& params,
                                  const FluxConfig& flux);

// Throws Error(existence) when the discriminant is not strictly negative.
double kappa_of_energy(double energy, const QuantumState& state, const PhysicalParams& params,
                       const FluxConfig& flux);

inline constexpr double kDefaultDegeneracyTol = 1e-12;

struct DegeneracyGroup {
  double energy = 0.0;
  std::vector<QuantumState> members;
  double tolerance = kDefaultDegeneracyTol;
};

// Groups states whose closed-form energies lie within tol of the lowest
// member of the group; groups are returned in ascending energy, members in
// input order, singletons dropped. Irregular states outside the singular
// sector are skipped.
std::vector<DegeneracyGroup> detect_degeneracies(std::span<const QuantumState> states,
                                                 const PhysicalParams& params,
                                                 const FluxConfig& flux,
                                                 double tol = kDefaultDegeneracyTol);

}  // namespace absolve
