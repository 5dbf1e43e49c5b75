#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "absolve/error.hpp"
#include "absolve/spectrum.hpp"

using namespace absolve;

namespace {

const PhysicalParams kAtomic{};

PhysicalParams rotating(double omega) {
  PhysicalParams p;
  p.omega = omega;
  return p;
}

double ulps(double a, double b) { return std::fabs(a - b) / std::numeric_limits<double>::epsilon(); }

}  // namespace

TEST_CASE("regular energies") {
  const auto flux0 = decompose_flux(0.0);
  CHECK(energy_regular({1, 0, 1}, kAtomic, flux0).energy == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(energy_regular({2, 0, 1}, kAtomic, flux0).energy ==
        doctest::Approx(-2.0 / 9.0).epsilon(1e-15));
  CHECK(energy_regular({1, 0, 1}, rotating(1.0), flux0).energy ==
        doctest::Approx(-2.5).epsilon(1e-15));
  const auto r = energy_regular({1, 0, 1}, kAtomic, flux0);
  CHECK(r.kappa == doctest::Approx(2.0));
  CHECK(r.exists);
  CHECK(r.provenance == Provenance::closed_form);
  CHECK(r.state.branch == Branch::regular);
}

TEST_CASE("irregular energies") {
  CHECK(energy_irregular({1, 0, 1, Branch::irregular}, kAtomic, decompose_flux(0.49)).energy ==
        doctest::Approx(-5000.0).epsilon(1e-10));
  CHECK(energy_irregular({1, 0, 1, Branch::irregular}, kAtomic, decompose_flux(0.2)).energy ==
        doctest::Approx(-1.0 / (2.0 * 0.09)).epsilon(1e-13));
  CHECK(energy_irregular({1, 0, 1, Branch::irregular}, kAtomic, decompose_flux(0.0)).energy ==
        energy_regular({1, 0, 1}, kAtomic, decompose_flux(0.0)).energy);
}

TEST_CASE("irregular outside the singular sector") {
  try {
    energy_irregular({1, 1, 1, Branch::irregular}, kAtomic, decompose_flux(0.0));
    FAIL("expected a sector error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::sector);
  }
  CHECK_THROWS_AS(closed_form_energy({1, 0, 1, Branch::irregular}, kAtomic, decompose_flux(0.5)),
                  Error);
  CHECK_NOTHROW(closed_form_energy({1, 0, 1, Branch::irregular}, kAtomic, decompose_flux(-0.49)));
}

TEST_CASE("kappa_of_energy") {
  const auto flux0 = decompose_flux(0.0);
  CHECK(kappa_of_energy(-2.0, {1, 0, 1}, kAtomic, flux0) == doctest::Approx(2.0).epsilon(1e-15));
  try {
    kappa_of_energy(1.0, {1, 0, 1}, kAtomic, flux0);
    FAIL("expected an existence error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::existence);
  }
  // Zero energy bound by rotation: j = -1, s = +1, Omega = 1.
  CHECK(kappa_of_energy(0.0, {1, -1, 1}, rotating(1.0), flux0) ==
        doctest::Approx(1.0).epsilon(1e-15));
  // Boundary case kappa = 0 is rejected.
  CHECK_THROWS_AS(kappa_of_energy(0.0, {1, 0, 1}, kAtomic, flux0), Error);
}

TEST_CASE("kappa_of_energy inverts the closed form") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> phi_dist(-6.0, 6.0), om(-3.0, 3.0);
  std::uniform_int_distribution<int> n_dist(1, 8), m_dist(-8, 8);
  for (int i = 0; i < 500; ++i) {
    const QuantumState st{n_dist(rng), m_dist(rng), (i % 2) ? 1 : -1};
    const auto flux = decompose_flux(phi_dist(rng));
    const auto p = rotating(om(rng));
    const auto res = energy_regular(st, p, flux);
    const double j = std::fabs(effective_j(st.m, flux.phi).value);
    const double expect = p.coupling() / (st.n - 0.5 + j);
    CHECK(res.exists);
    // Removing the rotation shift costs eps * (|E| + |shift|) on the binding part.
    const double eps = std::numeric_limits<double>::epsilon();
    const double cond = (std::fabs(res.energy) + std::fabs(res.rotation_shift)) /
                        std::fabs(res.binding_energy);
    CHECK(std::fabs(kappa_of_energy(res.energy, st, p, flux) - expect) <=
          4.0 * eps * cond * expect);
  }
}

TEST_CASE("rotation enters only through the shift") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> phi_dist(-4.0, 4.0);
  std::uniform_int_distribution<int> n_dist(1, 6), m_dist(-6, 6);
  for (int i = 0; i < 300; ++i) {
    const QuantumState st{n_dist(rng), m_dist(rng), (i % 2) ? 1 : -1};
    const auto flux = decompose_flux(phi_dist(rng));
    const double j = effective_j(st.m, flux.phi).value;
    const auto e0 = energy_regular(st, kAtomic, flux);
    for (double omega : {-2.0, -1.0, 0.5, 1.0, 3.0}) {
      const auto p = rotating(omega);
      const auto e = energy_regular(st, p, flux);
      CHECK(e.binding_energy == e0.binding_energy);
      CHECK(e.rotation_shift == -p.hbar * omega * (j + st.s / 2.0));
      CHECK(e.energy == e.binding_energy + e.rotation_shift);
      CHECK(ulps(e.energy - e0.energy, e.rotation_shift) <=
            4.0 * std::max({1.0, std::fabs(e.energy), std::fabs(e0.energy)}));
    }
  }
}

TEST_CASE("spin splitting is -hbar Omega") {
  for (double omega : {-2.0, 0.5, 3.0})
    for (double phi : {-1.25, 0.0, 0.375, 2.5})
      for (int m = -3; m <= 3; ++m) {
        const auto p = rotating(omega);
        const auto flux = decompose_flux(phi);
        const auto up = energy_regular({2, m, 1}, p, flux);
        const auto down = energy_regular({2, m, -1}, p, flux);
        CHECK(up.binding_energy == down.binding_energy);
        // Dyadic flux values keep j +- 1/2 exact.
        CHECK(up.rotation_shift - down.rotation_shift == -p.hbar * omega);
      }
}

TEST_CASE("static frame levels are negative") {
  for (double phi : {-2.7, -0.3, 0.0, 0.2, 1.5, 7.9})
    for (int m = -8; m <= 8; ++m)
      for (int n = 1; n <= 4; ++n) {
        const auto flux = decompose_flux(phi);
        CHECK(energy_regular({n, m, 1}, kAtomic, flux).energy < 0.0);
        if (is_singular_sector(effective_j(m, phi)))
          CHECK(energy_irregular({n, m, 1, Branch::irregular}, kAtomic, flux).energy < 0.0);
      }
}

TEST_CASE("regular energy is nondecreasing in flux for m >= 0") {
  for (int m = 0; m <= 5; ++m) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) {
      const double phi = 10.0 * i / 1000.0;
      const double e = energy_regular({1, m, 1}, kAtomic, decompose_flux(phi)).energy;
      CHECK(e >= prev);
      prev = e;
    }
  }
}

TEST_CASE("irregular binds more strongly than regular") {
  for (int i = -49; i <= 49; ++i) {
    const double phi = i / 100.0;
    const auto flux = decompose_flux(phi);
    for (int n = 1; n <= 4; ++n) {
      const double reg = energy_regular({n, 0, 1}, kAtomic, flux).energy;
      const double irr = energy_irregular({n, 0, 1, Branch::irregular}, kAtomic, flux).energy;
      if (i == 0)
        CHECK(irr == reg);
      else
        CHECK(std::fabs(irr) > std::fabs(reg));
    }
  }
}

TEST_CASE("integer flux shifts relabel m") {
  for (int k = -3; k <= 3; ++k)
    for (int m = -6; m <= 6; ++m)
      for (double phi : {0.0, 0.25, 0.625, -0.375}) {
        const double a = energy_regular({1, m, 1}, kAtomic, decompose_flux(phi)).energy;
        const double b = energy_regular({1, m - k, 1}, kAtomic, decompose_flux(phi + k)).energy;
        CHECK(a == b);
      }
}

TEST_CASE("zero Coulomb strength has no bound states") {
  PhysicalParams p;
  p.eta = 0.0;
  const auto r = energy_regular({1, 0, 1}, p, decompose_flux(0.3));
  CHECK_FALSE(r.exists);
  CHECK(r.kappa == 0.0);
}

TEST_CASE("degeneracy detection matches pairwise enumeration") {
  auto brute_force_pairs = [](const std::vector<QuantumState>& states, const PhysicalParams& p,
                              const FluxConfig& flux, double tol) {
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < states.size(); ++a)
      for (std::size_t b = a + 1; b < states.size(); ++b) {
        const double ea = closed_form_energy(states[a], p, flux).energy;
        const double eb = closed_form_energy(states[b], p, flux).energy;
        if (std::fabs(ea - eb) <= tol) pairs.insert({a, b});
      }
    return pairs;
  };
  auto detector_pairs = [](const std::vector<QuantumState>& states,
                           const std::vector<DegeneracyGroup>& groups) {
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& g : groups) {
      std::vector<std::size_t> idx;
      for (const auto& mem : g.members)
        for (std::size_t i = 0; i < states.size(); ++i)
          if (states[i] == mem) idx.push_back(i);
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
          pairs.insert({std::min(idx[a], idx[b]), std::max(idx[a], idx[b])});
    }
    return pairs;
  };

  std::vector<QuantumState> states;
  for (int m = -10; m <= 10; ++m)
    for (int s : {1, -1}) states.push_back({1, m, s});

  for (double omega : {0.0, 1.0})
    for (double phi : {5.0, 2.0, 0.3}) {
      const auto p = rotating(omega);
      const auto flux = decompose_flux(phi);
      const auto groups = detect_degeneracies(states, p, flux, 1e-12);
      INFO("omega=" << omega << " phi=" << phi);
      CHECK(detector_pairs(states, groups) == brute_force_pairs(states, p, flux, 1e-12));
      for (const auto& g : groups) CHECK(g.members.size() >= 2);
    }
}

TEST_CASE("integer flux groups states by |m + phi|") {
  std::vector<QuantumState> states;
  for (int m = -10; m <= 10; ++m)
    for (int s : {1, -1}) states.push_back({1, m, s});
  const auto groups = detect_degeneracies(states, kAtomic, decompose_flux(3.0));
  for (const auto& g : groups) {
    const double abs_j = std::fabs(g.members.front().m + 3.0);
    for (const auto& mem : g.members) CHECK(std::fabs(mem.m + 3.0) == abs_j);
  }
  // Each (m, +1) sits with (m, -1).
  for (int m = -10; m <= 10; ++m) {
    bool found = false;
    for (const auto& g : groups) {
      bool up = false, down = false;
      for (const auto& mem : g.members) {
        up |= mem.m == m && mem.s == 1;
        down |= mem.m == m && mem.s == -1;
      }
      found |= up && down;
    }
    CHECK(found);
  }
}

TEST_CASE("degeneracy input handling") {
  const std::vector<QuantumState> states{{1, 0, 1, Branch::irregular}, {1, 2, 1, Branch::irregular},
                                         {1, 0, -1, Branch::irregular}};
  // m = 2 is outside the sector at phi = 0.2 and is skipped.
  const auto groups = detect_degeneracies(states, kAtomic, decompose_flux(0.2));
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].members.size() == 2);
  CHECK(groups[0].members[0] == states[0]);
  CHECK(groups[0].members[1] == states[2]);
  CHECK_THROWS_AS(detect_degeneracies(states, kAtomic, decompose_flux(0.2), 0.0), Error);
  CHECK(detect_degeneracies({}, kAtomic, decompose_flux(0.2)).empty());
}
