#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "absolve/error.hpp"
#include "absolve/secular.hpp"

using namespace absolve;

namespace {

const PhysicalParams kAtomic{};

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// Secular function in t = coupling / kappa written with std::tgamma, for an
// independent sign scan.
double secular_oracle(double t, double lambda, double abs_j, double coupling) {
  const double kappa = coupling / t;
  const double a = 0.5 + abs_j - t, b = 1.0 + 2.0 * abs_j;
  const double ap = 0.5 - abs_j - t, bp = 1.0 - 2.0 * abs_j;
  return std::tgamma(b) / std::tgamma(a) +
         lambda * std::pow(2.0 * kappa, 2.0 * abs_j) * std::tgamma(bp) / std::tgamma(ap);
}

// Sign changes of the oracle on (0, t_max] with the given number of samples.
std::vector<double> oracle_roots_t(double lambda, double abs_j, double t_max, int samples) {
  std::vector<double> roots;
  double t_prev = t_max / samples;
  double f_prev = secular_oracle(t_prev, lambda, abs_j, 1.0);
  for (int i = 2; i <= samples; ++i) {
    const double t = t_max * i / samples;
    const double f = secular_oracle(t, lambda, abs_j, 1.0);
    if (std::isnan(f)) continue;  // sample landed on a pole of tgamma
    if ((f < 0.0) != (f_prev < 0.0)) roots.push_back(0.5 * (t + t_prev));
    t_prev = t;
    f_prev = f;
  }
  return roots;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::io;
}

}  // namespace

TEST_CASE("extension parameter") {
  CHECK(ExtensionParam::finite(2.5).value() == 2.5);
  CHECK_FALSE(ExtensionParam::finite(0.0).is_infinite());
  CHECK(ExtensionParam::infinity().is_infinite());
  CHECK(code_of([] { ExtensionParam::infinity().value(); }) == ErrorCode::domain);
  CHECK(code_of([] { ExtensionParam::finite(std::nan("")); }) == ErrorCode::invalid_argument);
}

TEST_CASE("kummer parameters") {
  const auto kp = make_kummer_params(0.5, -0.3, kAtomic, 2.0);
  CHECK(kp.abs_j == doctest::Approx(0.3));
  CHECK(kp.a == doctest::Approx(0.5 + 0.3 - 2.0));
  CHECK(kp.b == doctest::Approx(1.6));
  CHECK(kp.a_prime == doctest::Approx(0.5 - 0.3 - 2.0));
  CHECK(kp.b_prime == doctest::Approx(0.4));
  CHECK(kp.x == doctest::Approx(2.0));
  CHECK(kp.coupling_ratio() == doctest::Approx(2.0));
  CHECK(kp.l_plus == doctest::Approx(2.3));
  CHECK(kp.l_minus == doctest::Approx(-1.7));
}

TEST_CASE("coefficient ratio") {
  CHECK(coefficient_ratio(0.7, ExtensionParam::finite(0.0), 0.2, kAtomic) == 0.0);
  CHECK(coefficient_ratio(0.5, ExtensionParam::finite(1.0), 0.2, kAtomic) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(coefficient_ratio(1.0, ExtensionParam::finite(2.0), 0.25, kAtomic) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(code_of([] { coefficient_ratio(1.0, ExtensionParam::finite(1.0), 0.5, kAtomic); }) ==
        ErrorCode::sector);
  CHECK(code_of([] { coefficient_ratio(1.0, ExtensionParam::infinity(), 0.2, kAtomic); }) ==
        ErrorCode::domain);
}

TEST_CASE("secular function vanishes at the closed-form levels") {
  for (double j : {0.3, -0.3})
    for (int n = 1; n <= 5; ++n) {
      const double k_reg = 1.0 / (n - 0.5 + 0.3);
      const double k_irr = 1.0 / (n - 0.5 - 0.3);
      CHECK(std::fabs(secular_residual(k_reg, ExtensionParam::finite(0.0), j, kAtomic)) < 1e-14);
      CHECK(std::fabs(secular_residual(k_irr, ExtensionParam::infinity(), j, kAtomic)) < 1e-14);
    }
}

TEST_CASE("secular function is nonzero between regular levels") {
  for (int n = 1; n <= 5; ++n) {
    const double t_mid = n + 0.3;  // halfway between t = n - 0.2 and n + 0.8
    CHECK(std::fabs(secular_function(1.0 / t_mid, ExtensionParam::finite(0.0), 0.3, kAtomic)) >
          1e-3);
  }
}

TEST_CASE("solve_secular reproduces closed forms") {
  auto reg = solve_secular(ExtensionParam::finite(0.0), 0.2, kAtomic, 3);
  REQUIRE(reg.size() == 3);
  CHECK(rel(reg[0].kappa, 1.0 / 0.7) < 1e-10);
  CHECK(rel(reg[1].kappa, 1.0 / 1.7) < 1e-10);
  CHECK(rel(reg[2].kappa, 1.0 / 2.7) < 1e-10);
  for (int i = 0; i < 3; ++i) CHECK(reg[i].index == i + 1);

  auto irr = solve_secular(ExtensionParam::infinity(), 0.2, kAtomic, 1);
  REQUIRE(irr.size() == 1);
  CHECK(rel(irr[0].kappa, 1.0 / 0.3) < 1e-10);
}

TEST_CASE("limit consistency over the sector") {
  for (double j : {0.05, 0.2, 0.45, -0.2}) {
    const auto reg = solve_secular(ExtensionParam::finite(0.0), j, kAtomic, 5);
    const auto irr = solve_secular(ExtensionParam::infinity(), j, kAtomic, 5);
    REQUIRE(reg.size() == 5);
    REQUIRE(irr.size() == 5);
    for (int n = 1; n <= 5; ++n) {
      CHECK(rel(reg[n - 1].kappa, 1.0 / (n - 0.5 + std::fabs(j))) < 1e-10);
      CHECK(rel(irr[n - 1].kappa, 1.0 / (n - 0.5 - std::fabs(j))) < 1e-10);
    }
  }
}

TEST_CASE("regular problem outside the sector") {
  const auto reg = solve_secular(ExtensionParam::finite(0.0), 1.5, kAtomic, 3);
  REQUIRE(reg.size() == 3);
  for (int n = 1; n <= 3; ++n) CHECK(rel(reg[n - 1].kappa, 1.0 / (n + 1.0)) < 1e-10);
}

TEST_CASE("non-atomic units") {
  const PhysicalParams p{2.0, 0.5, 3.0, 0.7};
  const auto reg = solve_secular(ExtensionParam::finite(0.0), 0.35, p, 2);
  REQUIRE(reg.size() == 2);
  CHECK(rel(reg[0].kappa, p.coupling() / 0.85) < 1e-10);
  CHECK(rel(reg[1].kappa, p.coupling() / 1.85) < 1e-10);
}

TEST_CASE("finite lambda roots agree with a dense sign scan") {
  for (double lambda : {-1.0, 1.0, -0.3, 4.0})
    for (double j : {0.3, 0.1, 0.45}) {
      const auto roots = solve_secular(ExtensionParam::finite(lambda), j, kAtomic, 6);
      const auto scan = oracle_roots_t(lambda, j, 20.0, 100000);
      INFO("lambda=" << lambda << " j=" << j);
      REQUIRE(scan.size() >= roots.size());
      REQUIRE(roots.size() == 6);
      for (std::size_t k = 0; k < roots.size(); ++k) {
        CHECK(std::fabs(1.0 / roots[k].kappa - scan[k]) < 2e-4);
        CHECK(std::fabs(roots[k].residual) <= kSecularResidualTol);
        CHECK(std::fabs(secular_residual(roots[k].kappa, roots[k].lambda, j, kAtomic)) <=
              kSecularResidualTol);
      }
    }
}

TEST_CASE("lambda = -1 roots interlace with the limiting ladders") {
  const double j = 0.3;
  const auto roots = solve_secular(ExtensionParam::finite(-1.0), j, kAtomic, 2);
  REQUIRE(roots.size() == 2);
  // Limiting ladders in t: regular n - 1/2 + |j|, irregular n - 1/2 - |j|.
  std::vector<double> ladder{0.0};
  for (int n = 1; n <= 4; ++n) {
    ladder.push_back(n - 0.5 + j);
    ladder.push_back(n - 0.5 - j);
  }
  std::sort(ladder.begin(), ladder.end());
  std::vector<int> cell;
  for (const auto& r : roots) {
    const double t = 1.0 / r.kappa;
    const auto it = std::upper_bound(ladder.begin(), ladder.end(), t);
    REQUIRE(it != ladder.begin());
    REQUIRE(it != ladder.end());
    CHECK(t > *(it - 1));
    CHECK(t < *it);
    cell.push_back(static_cast<int>(it - ladder.begin()));
  }
  // No two roots share a cell of the merged ladder.
  CHECK(cell[0] != cell[1]);
  CHECK(roots[0].kappa > roots[1].kappa);
}

TEST_CASE("root lists are prefix stable") {
  for (auto lam : {ExtensionParam::finite(-1.0), ExtensionParam::finite(0.0),
                   ExtensionParam::finite(2.0), ExtensionParam::infinity()}) {
    const auto shorter = solve_secular(lam, 0.25, kAtomic, 3);
    const auto longer = solve_secular(lam, 0.25, kAtomic, 4);
    REQUIRE(shorter.size() == 3);
    REQUIRE(longer.size() == 4);
    for (int k = 0; k < 3; ++k) CHECK(shorter[k].kappa == longer[k].kappa);
  }
}

TEST_CASE("no Coulomb attraction, no roots") {
  PhysicalParams p;
  p.eta = 0.0;
  CHECK(solve_secular(ExtensionParam::finite(0.0), 0.2, p, 3).empty());
  CHECK(solve_secular(ExtensionParam::infinity(), 0.2, p, 3).empty());
}

TEST_CASE("solve_secular preconditions") {
  CHECK(code_of([] { solve_secular(ExtensionParam::infinity(), 0.7, kAtomic, 2); }) ==
        ErrorCode::sector);
  CHECK(code_of([] { solve_secular(ExtensionParam::finite(1.0), 0.5, kAtomic, 2); }) ==
        ErrorCode::sector);
  CHECK(code_of([] { solve_secular(ExtensionParam::finite(1.0), 0.0, kAtomic, 2); }) ==
        ErrorCode::sector);
  CHECK(code_of([] { solve_secular(ExtensionParam::finite(0.0), 0.2, kAtomic, 0); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([] { secular_function(-1.0, ExtensionParam::finite(0.0), 0.2, kAtomic); }) ==
        ErrorCode::domain);
}
