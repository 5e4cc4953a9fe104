#pragma once

#include "jsfkit/media.hpp"

namespace jsfkit {

// Wave-vector mismatch in the nonlinear fiber, third order and below:
//   dk = k2/4 (w_s - w_i)^2 + k3/8 (w_s + w_i - 2 w_p0)(w_s - w_i)^2 - 2 gamma P_p
// Arguments are absolute angular frequencies.
double delta_k_dsf(double omega_s, double omega_i, const PumpSpec& pump,
                   const FiberSpec& fiber);

// Medium-induced phase shift 2 phi(w_p) - phi(w_s) - phi(w_i) accumulated over
// the medium, with w_p = (w_s + w_i)/2 where the model needs a pump frequency.
double delta_phi_dm(double omega_s, double omega_i, const PumpSpec& pump,
                    const DispersiveMediumSpec& dm);

// Stripe orientation rho = -atan(tau_s / tau_i) in degrees, mapped to (-90, 90].
double stripe_orientation(double tau_s, double tau_i);

// Fused-silica refractive index (Sellmeier, lambda in meters) and the
// derived phase/group quantities used by the SellmeierGlass medium kind.
double silica_index(double lambda_m);
double silica_k(double omega);         // n(w) w / c, rad/m
double silica_k1(double omega);        // group delay per length, s/m
// first-order walk-off coefficients between pump and signal/idler centers
double walkoff_tau(double omega_p0, double omega_x0);

}  // namespace jsfkit
