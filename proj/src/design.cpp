#include "jsfkit/design.hpp"

#include <cmath>
#include <stdexcept>

namespace jsfkit {

using units::pi;

double round_island_ldm(int m, int stages, const PumpSpec& pump,
                        const DispersiveMediumSpec& dm) {
  if (m < 1) throw std::invalid_argument("round_island_ldm: m must be >= 1");
  if (stages < 2) throw std::invalid_argument("round_island_ldm: need at least 2 stages");
  if (dm.kind != DmKind::SmallDetuningQuadratic)
    throw std::invalid_argument("round_island_ldm: small-detuning medium required");
  const double k2 = dm.k2_dm(pump);
  if (!(k2 > 0)) throw std::domain_error("round_island_ldm: zero dispersion");
  return 1.0 / (m * (stages - 1) * pi * k2 * pump.sigma_p * pump.sigma_p);
}

EllipticalCondition elliptical_condition(double tau_s, double tau_i, double length_Ldm) {
  if (tau_s == 0.0 || tau_i == 0.0 || !(length_Ldm > 0))
    throw std::domain_error("elliptical_condition: zero walk-off product or length");
  EllipticalCondition out;
  const double s2 = -2.0 / (tau_s * tau_i * length_Ldm * length_Ldm);
  out.feasible = s2 > 0;
  out.sigma_p_sq = out.feasible ? s2 : 0.0;
  return out;
}

std::vector<double> binomial_lengths(int stages, double L1) {
  if (stages < 2) throw std::invalid_argument("binomial_lengths: need at least 2 stages");
  if (!(L1 > 0)) throw std::invalid_argument("binomial_lengths: L1 must be > 0");
  std::vector<double> out(static_cast<std::size_t>(stages));
  double coeff = 1.0;  // C(N-1, 0)
  for (int n = 0; n < stages; ++n) {
    out[static_cast<std::size_t>(n)] = L1 * coeff;
    coeff = coeff * (stages - 1 - n) / (n + 1);
  }
  return out;
}

double stripe_width(int m, const PumpSpec& pump, const DispersiveMediumSpec& dm) {
  if (m < 1) throw std::invalid_argument("stripe_width: m must be >= 1");
  if (dm.kind != DmKind::SmallDetuningQuadratic)
    throw std::invalid_argument("stripe_width: small-detuning medium required");
  const double k2L = dm.k2_dm(pump) * dm.length_Ldm;
  if (!(k2L > 0)) throw std::domain_error("stripe_width: zero dispersion-length product");
  return std::sqrt(2.0 / (m * pi * k2L));
}

}  // namespace jsfkit
