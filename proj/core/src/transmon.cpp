#include "wgqed/transmon.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wgqed {

namespace {
constexpr double kElementaryCharge = 1.602176634e-19;  // C
constexpr double kHbar = 1.054571817e-34;              // J s
constexpr double kPi = 3.14159265358979323846;
}  // namespace

void validate(const TransmonParams& p) {
  if (p.E_C_GHz <= 0.0) throw std::invalid_argument("TransmonParams: E_C must be > 0");
  if (p.E_J_GHz <= 0.0) throw std::invalid_argument("TransmonParams: E_J must be > 0");
  if (p.E_J_GHz / p.E_C_GHz <= 20.0)
    throw std::invalid_argument("TransmonParams: E_J/E_C = " +
                                std::to_string(p.E_J_GHz / p.E_C_GHz) +
                                " is outside the transmon regime (need > 20)");
  if (p.anharmonicity_GHz >= 0.0)
    throw std::invalid_argument("TransmonParams: anharmonicity must be negative");
  if (p.g < 0.0 || p.g >= 1.0)
    throw std::invalid_argument("TransmonParams: g must lie in [0, 1)");
}

void validate(const LineParams& line) {
  if (line.c_t_F_per_m <= 0.0 || line.v_m_per_s <= 0.0 || line.c_g_F <= 0.0)
    throw std::invalid_argument("LineParams: all entries must be > 0");
}

std::pair<double, double> derive_energies(double f_max_GHz,
                                          double anharmonicity_GHz) {
  if (f_max_GHz <= 0.0)
    throw std::invalid_argument("derive_energies: f_max must be > 0");
  if (anharmonicity_GHz >= 0.0)
    throw std::invalid_argument("derive_energies: anharmonicity must be negative");
  if (-anharmonicity_GHz >= f_max_GHz)
    throw std::invalid_argument("derive_energies: |anharmonicity| must be < f_max");
  const double E_C = -anharmonicity_GHz;
  const double s = f_max_GHz + E_C;  // sqrt(8 E_J E_C)
  const double E_J = s * s / (8.0 * E_C);
  return {E_J, E_C};
}

TransmonParams TransmonParams::from_spectroscopy(double f_max_GHz,
                                                 double anharmonicity_GHz,
                                                 double g) {
  auto [E_J, E_C] = derive_energies(f_max_GHz, anharmonicity_GHz);
  TransmonParams p;
  p.f_max_GHz = f_max_GHz;
  p.anharmonicity_GHz = anharmonicity_GHz;
  p.E_J_GHz = E_J;
  p.E_C_GHz = E_C;
  p.g = g;
  validate(p);
  return p;
}

double frequency_at_flux(const TransmonParams& p, double phi) {
  const double c = std::abs(std::cos(kPi * phi));
  const double f = std::sqrt(8.0 * p.E_J_GHz * p.E_C_GHz * c) - p.E_C_GHz;
  if (f <= 0.0)
    throw std::domain_error("frequency_at_flux: transition frequency is not "
                            "positive at phi = " + std::to_string(phi));
  return f;
}

double flux_for_frequency(const TransmonParams& p, double f_GHz) {
  if (f_GHz <= 0.0 || f_GHz > p.f_max_GHz + 1e-12)
    throw std::invalid_argument("flux_for_frequency: target must be in (0, f_max]");
  // f > 0 on [0, phi_c) with cos(pi phi_c) = E_C / (8 E_J); bisect inside.
  double lo = 0.0;
  double hi = (1.0 - 1e-12) * std::acos(p.E_C_GHz / (8.0 * p.E_J_GHz)) / kPi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (frequency_at_flux(p, mid) > f_GHz)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double coupling_g(const TransmonParams& p, const LineParams& line) {
  validate(p);
  validate(line);
  const double pref = std::sqrt(
      kElementaryCharge * kElementaryCharge * line.c_t_F_per_m /
      (2.0 * kHbar * kPi * line.v_m_per_s * line.c_g_F * line.c_g_F));
  return pref * std::pow(p.E_J_GHz / (8.0 * p.E_C_GHz), 0.25);
}

}  // namespace wgqed
