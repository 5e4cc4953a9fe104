#pragma once

#include <vector>

#include "jsfkit/media.hpp"

namespace jsfkit {

// Dispersive-medium length giving a round m-th island in an N-stage device:
// L_DM = 1 / [m (N-1) pi k2_dm sigma_p^2]. N = 2 recovers the two-stage rule.
double round_island_ldm(int m, int stages, const PumpSpec& pump,
                        const DispersiveMediumSpec& dm);

struct EllipticalCondition {
  bool feasible = false;     // requires tau_s tau_i < 0
  double sigma_p_sq = 0;     // required pump width^2 when feasible
};

// Factorability condition for the large-detuning model:
// sigma_p^2 = -2 / (tau_s tau_i L_DM^2); same-sign walk-off is infeasible
// in an isotropic medium.
EllipticalCondition elliptical_condition(double tau_s, double tau_i, double length_Ldm);

// Stage lengths L_n = L_1 C(N-1, n-1) removing all secondary interference maxima.
std::vector<double> binomial_lengths(int stages, double L1);

// Gaussian-equivalent width of the m-th interference stripe:
// sigma_int^2 = 2 / [m pi L_DM k2_dm].
double stripe_width(int m, const PumpSpec& pump, const DispersiveMediumSpec& dm);

}  // namespace jsfkit
