#pragma once

#include <cstdint>
#include <vector>

namespace absolve {

// Particle and field parameters. Defaults are atomic units with unit Coulomb
// strength and no rotation.
struct PhysicalParams {
  double mass = 1.0;
  double hbar = 1.0;
  double eta = 1.0;    // Coulomb strength, V(r) = -eta / r
  double omega = 0.0;  // frame rotation frequency about the flux line

  double eta_prime() const { return eta / (hbar * hbar); }
  // m_e * eta', the inverse Bohr-like length that sets every kappa.
  double coupling() const { return mass * eta_prime(); }

  void validate() const;

  static PhysicalParams atomic() { return {}; }
};

// Flux phi (in units of the flux quantum) split as phi = N + beta.
struct FluxConfig {
  double phi = 0.0;
  std::int64_t n_integer = 0;
  double beta = 0.0;
};

FluxConfig decompose_flux(double phi);

enum class Branch { regular, irregular };

const char* to_string(Branch branch) noexcept;

struct QuantumState {
  int n = 1;       // principal index, >= 1
  int m = 0;       // angular momentum quantum number
  int s = 1;       // spin projection, +1 or -1
  Branch branch = Branch::regular;

  friend bool operator==(const QuantumState&, const QuantumState&) = default;
};

// Checks n >= 1 and s = +-1. The sector requirement of the irregular branch
// depends on the flux and is enforced where energies are evaluated.
void validate(const QuantumState& state);

struct EffectiveMomentum {
  double value = 0.0;
};

inline EffectiveMomentum effective_j(int m, double phi) {
  return {static_cast<double>(m) + phi};
}

// |j| < 1/2: the irregular r^-|j| solution is square integrable and the
// radial operator admits a one-parameter family of self-adjoint extensions.
inline bool is_singular_sector(EffectiveMomentum j) { return j.value < 0.5 && j.value > -0.5; }

// Angular momenta m with -1/2 - phi < m < 1/2 - phi; at most one.
std::vector<int> admissible_m(double phi);

}  // namespace absolve
