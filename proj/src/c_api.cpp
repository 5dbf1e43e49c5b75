#include "absolve/absolve.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include <json.hpp>

#include "absolve/error.hpp"
#include "absolve/model.hpp"
#include "absolve/oracle.hpp"
#include "absolve/secular.hpp"
#include "absolve/spectrum.hpp"
#include "absolve/verify.hpp"
#include "absolve/wavefunction.hpp"

struct absolve_model {
  absolve::PhysicalParams params;
  absolve::FluxConfig flux;
};

struct absolve_profile {
  absolve::RadialProfile profile;
  absolve::NormAndNodes stats;
  absolve::BoundaryValues boundary;
  double boundary_residual = 0.0;
};

namespace {

thread_local std::string g_last_error;

absolve_status to_status(absolve::ErrorCode code) {
  using absolve::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return ABSOLVE_ERR_INVALID_ARGUMENT;
    case ErrorCode::pole: return ABSOLVE_ERR_POLE;
    case ErrorCode::domain: return ABSOLVE_ERR_DOMAIN;
    case ErrorCode::sector: return ABSOLVE_ERR_SECTOR;
    case ErrorCode::existence: return ABSOLVE_ERR_EXISTENCE;
    case ErrorCode::convergence: return ABSOLVE_ERR_CONVERGENCE;
    case ErrorCode::resolution: return ABSOLVE_ERR_RESOLUTION;
    case ErrorCode::io: return ABSOLVE_ERR_IO;
  }
  return ABSOLVE_ERR_INTERNAL;
}

absolve_status set_error(absolve_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <class Fn>
absolve_status guarded(Fn&& fn) noexcept {
  try {
    g_last_error.clear();
    fn();
    return ABSOLVE_OK;
  } catch (const absolve::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(ABSOLVE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(ABSOLVE_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(ABSOLVE_ERR_INTERNAL, "unknown exception");
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr)
    absolve::fail(absolve::ErrorCode::invalid_argument, std::string(name) + " must not be NULL");
}

absolve::QuantumState to_state(const absolve_state& s) {
  return {s.n, s.m, s.s,
          s.branch == ABSOLVE_BRANCH_IRREGULAR ? absolve::Branch::irregular
                                               : absolve::Branch::regular};
}

absolve::ExtensionParam to_lambda(const absolve_lambda& l) {
  return l.is_infinite ? absolve::ExtensionParam::infinity()
                       : absolve::ExtensionParam::finite(l.value);
}

}  // namespace

extern "C" {

const char* absolve_version(void) { return "1.0.0"; }

const char* absolve_status_string(absolve_status status) {
  switch (status) {
    case ABSOLVE_OK: return "ok";
    case ABSOLVE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ABSOLVE_ERR_POLE: return "pole";
    case ABSOLVE_ERR_DOMAIN: return "domain error";
    case ABSOLVE_ERR_SECTOR: return "sector violation";
    case ABSOLVE_ERR_EXISTENCE: return "no bound state";
    case ABSOLVE_ERR_CONVERGENCE: return "convergence failure";
    case ABSOLVE_ERR_RESOLUTION: return "insufficient resolution";
    case ABSOLVE_ERR_IO: return "I/O error";
    case ABSOLVE_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case ABSOLVE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* absolve_last_error(void) { return g_last_error.c_str(); }

absolve_params absolve_atomic_units(void) {
  const absolve::PhysicalParams p = absolve::PhysicalParams::atomic();
  return {p.mass, p.hbar, p.eta, p.omega};
}

absolve_status absolve_model_create(const absolve_params* params, double flux,
                                    absolve_model** out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    *out = nullptr;
    absolve::PhysicalParams p{params->mass, params->hbar, params->eta, params->omega};
    p.validate();
    *out = new absolve_model{p, absolve::decompose_flux(flux)};
  });
}

void absolve_model_destroy(absolve_model* model) { delete model; }

absolve_status absolve_model_params(const absolve_model* model, absolve_params* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto& p = model->params;
    *out = {p.mass, p.hbar, p.eta, p.omega};
  });
}

absolve_status absolve_model_flux(const absolve_model* model, double* flux, int64_t* n_integer,
                                  double* beta) {
  return guarded([&] {
    require(model, "model");
    if (flux) *flux = model->flux.phi;
    if (n_integer) *n_integer = model->flux.n_integer;
    if (beta) *beta = model->flux.beta;
  });
}

double absolve_effective_j(int m, double flux) { return absolve::effective_j(m, flux).value; }

int absolve_is_singular_sector(double j) { return absolve::is_singular_sector({j}) ? 1 : 0; }

absolve_status absolve_admissible_m(double flux, int* m_out, size_t* count) {
  return guarded([&] {
    require(m_out, "m_out");
    require(count, "count");
    const auto ms = absolve::admissible_m(flux);
    *count = ms.size();
    if (!ms.empty()) *m_out = ms.front();
  });
}

absolve_status absolve_energy(const absolve_model* model, absolve_state state,
                              absolve_level* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto r = absolve::closed_form_energy(to_state(state), model->params, model->flux);
    *out = {r.energy,
            r.kappa,
            r.binding_energy,
            r.rotation_shift,
            absolve::effective_j(state.m, model->flux.phi).value,
            r.exists ? 1 : 0};
  });
}

absolve_status absolve_kappa_of_energy(const absolve_model* model, double energy, int m, int s,
                                       double* kappa) {
  return guarded([&] {
    require(model, "model");
    require(kappa, "kappa");
    *kappa = absolve::kappa_of_energy(energy, {1, m, s, absolve::Branch::regular}, model->params,
                                      model->flux);
  });
}

absolve_status absolve_degeneracy_groups(const absolve_model* model, const absolve_state* states,
                                         size_t count, double tolerance, int* group_ids) {
  return guarded([&] {
    require(model, "model");
    if (count == 0) return;
    require(states, "states");
    require(group_ids, "group_ids");
    std::vector<absolve::QuantumState> qs;
    qs.reserve(count);
    for (size_t i = 0; i < count; ++i) qs.push_back(to_state(states[i]));
    const auto groups = absolve::detect_degeneracies(qs, model->params, model->flux, tolerance);
    std::fill(group_ids, group_ids + count, -1);
    // Members come back in input order, so equal states map to consecutive slots.
    for (size_t g = 0; g < groups.size(); ++g) {
      size_t cursor = 0;
      for (const auto& member : groups[g].members) {
        while (cursor < count && !(qs[cursor] == member && group_ids[cursor] == -1)) ++cursor;
        if (cursor < count) group_ids[cursor++] = static_cast<int>(g);
      }
    }
  });
}

absolve_status absolve_solve_secular(const absolve_model* model, int m, int s,
                                     absolve_lambda lambda, size_t count, absolve_root* roots,
                                     size_t* found) {
  return guarded([&] {
    require(model, "model");
    require(found, "found");
    *found = 0;
    if (count == 0) return;
    require(roots, "roots");
    if (s != 1 && s != -1)
      absolve::fail(absolve::ErrorCode::invalid_argument, "spin projection must be +1 or -1");
    const double j = absolve::effective_j(m, model->flux.phi).value;
    const auto rs = absolve::solve_secular(to_lambda(lambda), j, model->params,
                                           static_cast<int>(std::min<size_t>(count, 100000)));
    for (const auto& r : rs)
      roots[(*found)++] = {r.index, r.kappa, r.residual,
                           absolve::energy_of_kappa(r.kappa, j, s, model->params)};
  });
}

absolve_status absolve_bound_state_profile(const absolve_model* model, int m,
                                           absolve_lambda lambda, int root_index, size_t points,
                                           absolve_profile** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = nullptr;
    if (root_index < 1)
      absolve::fail(absolve::ErrorCode::invalid_argument, "root index must be >= 1");
    if (points < 2 || points > 10000000)
      absolve::fail(absolve::ErrorCode::invalid_argument, "points must be in [2, 1e7]");
    const double j = absolve::effective_j(m, model->flux.phi).value;
    const auto ext = to_lambda(lambda);
    const auto roots = absolve::solve_secular(ext, j, model->params, root_index);
    if (static_cast<int>(roots.size()) < root_index)
      absolve::fail(absolve::ErrorCode::existence, "requested root was not found");
    const auto st = absolve::make_bound_state(roots.back(), model->params);
    auto prof = std::make_unique<absolve_profile>();
    prof->profile = absolve::sample_bound_state(st, static_cast<int>(points));
    prof->stats = absolve::normalize_and_count_nodes(prof->profile);
    if (std::fabs(j) < 0.5) {
      prof->boundary = absolve::boundary_values(st.coeffs, st.kummer);
      prof->boundary_residual = absolve::boundary_condition_residual(ext, prof->boundary);
    } else {
      prof->boundary = {0.0, 0.0};
      prof->boundary_residual = 0.0;
    }
    *out = prof.release();
  });
}

void absolve_profile_destroy(absolve_profile* profile) { delete profile; }

size_t absolve_profile_size(const absolve_profile* profile) {
  return profile ? profile->profile.r.size() : 0;
}

absolve_status absolve_profile_samples(const absolve_profile* profile, double* r, double* value,
                                       size_t capacity) {
  if (profile && capacity < profile->profile.r.size())
    return set_error(ABSOLVE_ERR_BUFFER_TOO_SMALL, "sample buffers are shorter than the profile");
  return guarded([&] {
    require(profile, "profile");
    require(r, "r");
    require(value, "value");
    std::copy(profile->profile.r.begin(), profile->profile.r.end(), r);
    std::copy(profile->profile.value.begin(), profile->profile.value.end(), value);
  });
}

absolve_status absolve_profile_stats(const absolve_profile* profile, double* kappa, double* norm,
                                     int* nodes) {
  return guarded([&] {
    require(profile, "profile");
    if (kappa) *kappa = profile->profile.kappa;
    if (norm) *norm = profile->stats.norm;
    if (nodes) *nodes = profile->stats.nodes;
  });
}

absolve_status absolve_profile_boundary(const absolve_profile* profile, double* f0, double* f1,
                                        double* residual) {
  return guarded([&] {
    require(profile, "profile");
    if (f0) *f0 = profile->boundary.f0;
    if (f1) *f1 = profile->boundary.f1;
    if (residual) *residual = profile->boundary_residual;
  });
}

absolve_status absolve_oracle_regular(const absolve_model* model, int m, size_t n_max,
                                      double* kappas, size_t* found) {
  return guarded([&] {
    require(model, "model");
    require(found, "found");
    *found = 0;
    if (n_max == 0) return;
    require(kappas, "kappas");
    const double j = absolve::effective_j(m, model->flux.phi).value;
    const auto levels = absolve::oracle_regular_spectrum(
        j, model->params, static_cast<int>(std::min<size_t>(n_max, 1000)));
    for (const auto& ev : levels) kappas[(*found)++] = ev.kappa;
  });
}

absolve_status absolve_verify(const char* only, double gamma_fault, char* json, size_t capacity,
                              size_t* needed, int* all_pass) {
  std::string text;
  const absolve_status st = guarded([&] {
    absolve::VerifyOptions opt;
    if (only != nullptr && *only != '\0') opt.only = only;
    opt.gamma_fault = gamma_fault;
    const absolve::VerifyReport report = absolve::run_verification(opt);
    nlohmann::json doc;
    doc["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks)
      doc["checks"].push_back(
          {{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}, {"tolerance", c.tolerance}});
    doc["pass"] = report.pass;
    text = doc.dump(2);
    if (all_pass) *all_pass = report.pass ? 1 : 0;
  });
  if (st != ABSOLVE_OK) return st;
  if (needed) *needed = text.size() + 1;
  if (json == nullptr || capacity < text.size() + 1)
    return set_error(ABSOLVE_ERR_BUFFER_TOO_SMALL, "report buffer too small");
  std::memcpy(json, text.c_str(), text.size() + 1);
  return ABSOLVE_OK;
}

}  // extern "C"
