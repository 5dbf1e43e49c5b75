#include <doctest.h>

#include <absolve/absolve.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

namespace {

struct ModelGuard {
  absolve_model* m = nullptr;
  ~ModelGuard() { absolve_model_destroy(m); }
};

struct ProfileGuard {
  absolve_profile* p = nullptr;
  ~ProfileGuard() { absolve_profile_destroy(p); }
};

}  // namespace

TEST_CASE("model lifecycle") {
  const absolve_params au = absolve_atomic_units();
  CHECK(au.mass == 1.0);
  CHECK(au.hbar == 1.0);
  CHECK(au.eta == 1.0);
  CHECK(au.omega == 0.0);

  ModelGuard g;
  REQUIRE(absolve_model_create(&au, -0.3, &g.m) == ABSOLVE_OK);
  double flux = 0.0, beta = 0.0;
  int64_t n = 0;
  REQUIRE(absolve_model_flux(g.m, &flux, &n, &beta) == ABSOLVE_OK);
  CHECK(flux == -0.3);
  CHECK(n == -1);
  CHECK(beta == doctest::Approx(0.7));
  absolve_params back{};
  REQUIRE(absolve_model_params(g.m, &back) == ABSOLVE_OK);
  CHECK(back.eta == 1.0);
  absolve_model_destroy(nullptr);
}

TEST_CASE("invalid arguments are reported, not thrown") {
  absolve_params bad = absolve_atomic_units();
  bad.mass = -1.0;
  absolve_model* m = reinterpret_cast<absolve_model*>(0x1);
  CHECK(absolve_model_create(&bad, 0.0, &m) == ABSOLVE_ERR_INVALID_ARGUMENT);
  CHECK(m == nullptr);
  CHECK(std::strlen(absolve_last_error()) > 0);
  CHECK(absolve_model_create(nullptr, 0.0, &m) == ABSOLVE_ERR_INVALID_ARGUMENT);
  CHECK(absolve_energy(nullptr, {1, 0, 1, ABSOLVE_BRANCH_REGULAR}, nullptr) ==
        ABSOLVE_ERR_INVALID_ARGUMENT);
  CHECK(std::string(absolve_status_string(ABSOLVE_ERR_SECTOR)) == "sector violation");
  CHECK(std::string(absolve_version()).size() > 0);
}

TEST_CASE("energies through the C API") {
  const absolve_params au = absolve_atomic_units();
  ModelGuard g;
  REQUIRE(absolve_model_create(&au, 0.0, &g.m) == ABSOLVE_OK);
  absolve_level level{};
  REQUIRE(absolve_energy(g.m, {1, 0, 1, ABSOLVE_BRANCH_REGULAR}, &level) == ABSOLVE_OK);
  CHECK(level.energy == -2.0);
  CHECK(level.kappa == 2.0);
  CHECK(level.exists == 1);
  CHECK(absolve_energy(g.m, {1, 1, 1, ABSOLVE_BRANCH_IRREGULAR}, &level) == ABSOLVE_ERR_SECTOR);

  double kappa = 0.0;
  CHECK(absolve_kappa_of_energy(g.m, -2.0, 0, 1, &kappa) == ABSOLVE_OK);
  CHECK(kappa == doctest::Approx(2.0));
  CHECK(absolve_kappa_of_energy(g.m, 1.0, 0, 1, &kappa) == ABSOLVE_ERR_EXISTENCE);

  ModelGuard g49;
  REQUIRE(absolve_model_create(&au, 0.49, &g49.m) == ABSOLVE_OK);
  REQUIRE(absolve_energy(g49.m, {1, 0, 1, ABSOLVE_BRANCH_IRREGULAR}, &level) == ABSOLVE_OK);
  CHECK(level.energy == doctest::Approx(-5000.0).epsilon(1e-10));
}

TEST_CASE("sector helpers") {
  CHECK(absolve_effective_j(-5, 5.3) == doctest::Approx(0.3));
  CHECK(absolve_is_singular_sector(0.49) == 1);
  CHECK(absolve_is_singular_sector(0.5) == 0);
  int m = 99;
  size_t count = 7;
  REQUIRE(absolve_admissible_m(5.3, &m, &count) == ABSOLVE_OK);
  CHECK(count == 1);
  CHECK(m == -5);
  REQUIRE(absolve_admissible_m(0.5, &m, &count) == ABSOLVE_OK);
  CHECK(count == 0);
}

TEST_CASE("degeneracy groups") {
  const absolve_params au = absolve_atomic_units();
  ModelGuard g;
  REQUIRE(absolve_model_create(&au, 2.0, &g.m) == ABSOLVE_OK);
  const std::vector<absolve_state> states{{1, -1, 1, ABSOLVE_BRANCH_REGULAR},
                                          {1, -3, 1, ABSOLVE_BRANCH_REGULAR},
                                          {1, 0, 1, ABSOLVE_BRANCH_REGULAR},
                                          {1, -1, -1, ABSOLVE_BRANCH_REGULAR}};
  std::vector<int> ids(states.size(), 42);
  REQUIRE(absolve_degeneracy_groups(g.m, states.data(), states.size(), 1e-12, ids.data()) ==
          ABSOLVE_OK);
  // |j| = 1, 1, 2, 1
  CHECK(ids[0] >= 0);
  CHECK(ids[0] == ids[1]);
  CHECK(ids[0] == ids[3]);
  CHECK(ids[2] == -1);
}

TEST_CASE("secular roots and profiles") {
  const absolve_params au = absolve_atomic_units();
  ModelGuard g;
  REQUIRE(absolve_model_create(&au, 0.2, &g.m) == ABSOLVE_OK);
  std::vector<absolve_root> roots(3);
  size_t found = 0;
  REQUIRE(absolve_solve_secular(g.m, 0, 1, {0.0, 1}, roots.size(), roots.data(), &found) ==
          ABSOLVE_OK);
  REQUIRE(found == 3);
  CHECK(roots[0].kappa == doctest::Approx(1.0 / 0.3));
  CHECK(roots[0].index == 1);
  CHECK(roots[0].energy == doctest::Approx(-0.5 / 0.09));
  CHECK(absolve_solve_secular(g.m, 1, 1, {0.0, 1}, 3, roots.data(), &found) == ABSOLVE_ERR_SECTOR);

  ProfileGuard p;
  REQUIRE(absolve_bound_state_profile(g.m, 0, {-1.0, 0}, 2, 5000, &p.p) == ABSOLVE_OK);
  const size_t size = absolve_profile_size(p.p);
  CHECK(size == 5000);
  std::vector<double> r(size), f(size);
  CHECK(absolve_profile_samples(p.p, r.data(), f.data(), size - 1) == ABSOLVE_ERR_BUFFER_TOO_SMALL);
  REQUIRE(absolve_profile_samples(p.p, r.data(), f.data(), size) == ABSOLVE_OK);
  CHECK(r.front() < r.back());
  double kappa = 0, norm = 0, f0 = 0, f1 = 0, residual = 1;
  int nodes = -1;
  REQUIRE(absolve_profile_stats(p.p, &kappa, &norm, &nodes) == ABSOLVE_OK);
  CHECK(nodes == 1);
  CHECK(norm > 0.0);
  REQUIRE(absolve_profile_boundary(p.p, &f0, &f1, &residual) == ABSOLVE_OK);
  CHECK(residual < 1e-8);
  CHECK(f0 == doctest::Approx(-f1).epsilon(1e-8));

  absolve_profile* none = nullptr;
  CHECK(absolve_bound_state_profile(g.m, 0, {0.0, 0}, 0, 100, &none) ==
        ABSOLVE_ERR_INVALID_ARGUMENT);
  CHECK(none == nullptr);
}

TEST_CASE("oracle through the C API") {
  const absolve_params au = absolve_atomic_units();
  ModelGuard g;
  REQUIRE(absolve_model_create(&au, 0.25, &g.m) == ABSOLVE_OK);
  std::vector<double> kappas(3);
  size_t found = 0;
  REQUIRE(absolve_oracle_regular(g.m, 0, 3, kappas.data(), &found) == ABSOLVE_OK);
  REQUIRE(found == 3);
  for (size_t n = 1; n <= 3; ++n)
    CHECK(std::fabs(kappas[n - 1] - 1.0 / (n - 0.25)) < 1e-6 / (n - 0.25));
}

TEST_CASE("verification report") {
  size_t needed = 0;
  int pass = -1;
  CHECK(absolve_verify("model", 0.0, nullptr, 0, &needed, &pass) == ABSOLVE_ERR_BUFFER_TOO_SMALL);
  REQUIRE(needed > 1);
  std::vector<char> buf(needed);
  REQUIRE(absolve_verify("model", 0.0, buf.data(), buf.size(), &needed, &pass) == ABSOLVE_OK);
  CHECK(pass == 1);
  const std::string json(buf.data());
  CHECK(json.find("\"checks\"") != std::string::npos);
  CHECK(json.find("\"flux_round_trip\"") != std::string::npos);

  std::vector<char> big(1 << 16);
  REQUIRE(absolve_verify("specfun", 1e-3, big.data(), big.size(), &needed, &pass) == ABSOLVE_OK);
  CHECK(pass == 0);
  CHECK(absolve_verify("bogus", 0.0, big.data(), big.size(), &needed, &pass) ==
        ABSOLVE_ERR_INVALID_ARGUMENT);
}
