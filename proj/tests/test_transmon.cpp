#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wgqed/transmon.hpp"

using namespace wgqed;

TEST_CASE("derive_energies inverts the spectroscopic relations") {
  auto [ej, ec] = derive_energies(6.89, -0.298);
  CHECK(ec == doctest::Approx(0.298).epsilon(1e-14));
  CHECK(ej == doctest::Approx((6.89 + 0.298) * (6.89 + 0.298) / (8.0 * 0.298))
                  .epsilon(1e-14));
  // Forward substitution reproduces the inputs to machine precision.
  CHECK(std::sqrt(8.0 * ej * ec) - ec == doctest::Approx(6.89).epsilon(1e-12));

  auto [ej2, ec2] = derive_energies(6.84, -0.298);
  CHECK(ec2 == doctest::Approx(0.298).epsilon(1e-14));
  CHECK(std::sqrt(8.0 * ej2 * ec2) - ec2 ==
        doctest::Approx(6.84).epsilon(1e-12));
  CHECK(ej2 == doctest::Approx(21.372).epsilon(1e-3));
}

TEST_CASE("derive_energies round-trips constructed energy pairs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 0.5);
  for (int k = 0; k < 50; ++k) {
    const double ec = u(rng);
    const double ej = 25.0 * ec * (1.0 + u(rng));  // keep E_J/E_C > 20
    const double f_max = std::sqrt(8.0 * ej * ec) - ec;
    auto [ej_r, ec_r] = derive_energies(f_max, -ec);
    CHECK(ej_r == doctest::Approx(ej).epsilon(1e-12));
    CHECK(ec_r == doctest::Approx(ec).epsilon(1e-12));
  }
}

TEST_CASE("derive_energies rejects bad inputs") {
  CHECK_THROWS_AS(derive_energies(-1.0, -0.3), std::invalid_argument);
  CHECK_THROWS_AS(derive_energies(6.9, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(derive_energies(6.9, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(derive_energies(0.2, -0.3), std::invalid_argument);
}

TEST_CASE("frequency_at_flux basics") {
  const auto p = TransmonParams::from_spectroscopy(6.89, -0.298, 0.0146);

  CHECK(frequency_at_flux(p, 0.0) == doctest::Approx(6.89).epsilon(1e-12));
  CHECK_THROWS_AS(frequency_at_flux(p, 0.5), std::domain_error);

  SUBCASE("even and periodic") {
    for (double phi : {0.05, 0.17, 0.31, 0.44}) {
      CHECK(frequency_at_flux(p, phi) ==
            doctest::Approx(frequency_at_flux(p, -phi)).epsilon(1e-14));
      CHECK(frequency_at_flux(p, phi) ==
            doctest::Approx(frequency_at_flux(p, phi + 1.0)).epsilon(1e-12));
      CHECK(frequency_at_flux(p, phi) ==
            doctest::Approx(frequency_at_flux(p, phi - 3.0)).epsilon(1e-12));
    }
  }

  SUBCASE("monotone decreasing on [0, 0.5)") {
    double prev = frequency_at_flux(p, 0.0);
    for (double phi = 0.02; phi < 0.45; phi += 0.02) {
      const double f = frequency_at_flux(p, phi);
      CHECK(f < prev);
      prev = f;
    }
  }

  SUBCASE("inverse solve round trip") {
    const double phi = flux_for_frequency(p, 6.4);
    CHECK(frequency_at_flux(p, phi) == doctest::Approx(6.4).epsilon(1e-10));
    CHECK(flux_for_frequency(p, 6.89) == doctest::Approx(0.0).epsilon(1e-8));
  }
}

TEST_CASE("coupling_g scaling laws and magnitude") {
  const auto p = TransmonParams::from_spectroscopy(6.89, -0.298, 0.0146);
  LineParams line{1.6e-10, 1.2e8, 6.0e-15};

  const double g0 = coupling_g(p, line);
  CHECK(g0 > 0.0);

  SUBCASE("g scales as 1/c_g") {
    LineParams half = line;
    half.c_g_F *= 0.5;
    CHECK(coupling_g(p, half) == doctest::Approx(2.0 * g0).epsilon(1e-12));
  }

  SUBCASE("g scales as (E_J)^(1/4) at fixed E_C") {
    TransmonParams p16 = p;
    p16.E_J_GHz *= 16.0;
    CHECK(coupling_g(p16, line) == doctest::Approx(2.0 * g0).epsilon(1e-12));
  }

  SUBCASE("power laws under random positive scalings") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int k = 0; k < 30; ++k) {
      const double a = u(rng), b = u(rng), c = u(rng);
      LineParams scaled{line.c_t_F_per_m * a, line.v_m_per_s * b,
                        line.c_g_F * c};
      const double expect = g0 * std::sqrt(a / b) / c;
      CHECK(coupling_g(p, scaled) == doctest::Approx(expect).epsilon(1e-10));
    }
  }

  SUBCASE("measured couplings are attainable with plausible line values") {
    // Invert for the coupling capacitance that lands on the two
    // calibrated values, holding the line at c_t ~ 1e-10 F/m scale. The
    // absolute capacitance absorbs the formula's unit convention; the
    // physical checks are the exact round trip and that two similar
    // devices need similar capacitances.
    const auto p2 = TransmonParams::from_spectroscopy(6.84, -0.298, 0.0180);
    std::vector<double> solved;
    for (auto [params, target] :
         {std::pair{p, 0.0146}, std::pair{p2, 0.0180}}) {
      LineParams probe = line;
      probe.c_g_F = 1.0;
      const double c_g = coupling_g(params, probe) / target;
      CHECK(c_g > 0.0);
      probe.c_g_F = c_g;
      CHECK(coupling_g(params, probe) ==
            doctest::Approx(target).epsilon(1e-10));
      solved.push_back(c_g);
    }
    CHECK(solved[1] / solved[0] > 0.5);
    CHECK(solved[1] / solved[0] < 2.0);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(TransmonParams::from_spectroscopy(0.4, -0.298, 0.0),
                  std::invalid_argument);  // E_J/E_C too small
  CHECK_THROWS_AS(TransmonParams::from_spectroscopy(6.89, -0.298, 1.5),
                  std::invalid_argument);  // g out of range
  CHECK_THROWS_AS((validate(LineParams{0.0, 1.2e8, 6e-15})),
                  std::invalid_argument);
}
