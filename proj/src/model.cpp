#include "absolve/model.hpp"

#include <cmath>
#include <sstream>

#include "absolve/error.hpp"

namespace absolve {

void PhysicalParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass))
    fail(ErrorCode::invalid_argument, "mass must be positive");
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    fail(ErrorCode::invalid_argument, "hbar must be positive");
  if (!(eta >= 0.0) || !std::isfinite(eta))
    fail(ErrorCode::invalid_argument, "eta must be nonnegative");
  if (!std::isfinite(omega)) fail(ErrorCode::invalid_argument, "omega must be finite");
}

FluxConfig decompose_flux(double phi) {
  if (!std::isfinite(phi)) fail(ErrorCode::invalid_argument, "flux must be finite");
  const double floor_phi = std::floor(phi);
  FluxConfig flux{phi, static_cast<std::int64_t>(floor_phi), phi - floor_phi};
  // phi just below an integer can round beta up to exactly 1.
  if (flux.beta >= 1.0) {
    flux.n_integer += 1;
    flux.beta = 0.0;
  }
  return flux;
}

const char* to_string(Branch branch) noexcept {
  return branch == Branch::regular ? "regular" : "irregular";
}

void validate(const QuantumState& state) {
  if (state.n < 1) {
    std::ostringstream msg;
    msg << "principal index n = " << state.n << " must be >= 1";
    fail(ErrorCode::invalid_argument, msg.str());
  }
  if (state.s != 1 && state.s != -1) {
    std::ostringstream msg;
    msg << "spin projection s = " << state.s << " must be +1 or -1";
    fail(ErrorCode::invalid_argument, msg.str());
  }
}

std::vector<int> admissible_m(double phi) {
  const FluxConfig flux = decompose_flux(phi);
  const double shift = static_cast<double>(flux.n_integer) + flux.beta;
  const double lower = -0.5 - shift;
  const double upper = 0.5 - shift;
  std::vector<int> out;
  for (auto m = static_cast<std::int64_t>(std::floor(lower));
       m <= static_cast<std::int64_t>(std::ceil(upper)); ++m) {
    const auto mm = static_cast<double>(m);
    if (lower < mm && mm < upper) out.push_back(static_cast<int>(m));
  }
  return out;
}

}  // namespace absolve
