#pragma once

#include <optional>
#include <span>

#include "jsfkit/dispersion.hpp"
#include "jsfkit/grid.hpp"

namespace jsfkit {

// sinc(x) = sin(x)/x with the removable singularity handled by a series
// branch below |x| = 1e-8.
double sinc(double x);

// Phase-matching factor of one fiber segment: sinc(dk L/2) e^{j dk L/2}.
cplx phase_match_factor(double dk, double length);

// Complex pump envelope exp[-(w_s + w_i - 2 w_p0)^2 (1 + j C_p) / 4 sigma_p^2].
cplx pump_envelope(const PumpSpec& pump, double omega_s, double omega_i);

// Multi-slit interference factor H(theta) = sin(N theta)/sin(theta) e^{j(N-1)theta},
// with the theta = m pi limit branch (|H| = N there).
cplx interference_H(double theta, int stages);

// Uneven-stage factor K(theta) = sum_n L_n e^{2j(n-1) theta}.
cplx interference_K(double theta, std::span<const double> lengths);

// Phase-matching slopes expressed as multiples of sigma_p (A = A_sigma * sigma_p).
struct SimpleJsfParams {
  double A_sigma = 0;
  double B_sigma = 0;
  double chirp_Cp = 0;
  void validate() const;
};

struct NliDesign {
  std::vector<double> stage_lengths;           // N >= 1, meters
  std::optional<DispersiveMediumSpec> dm;      // identical between all stage pairs
  std::optional<bool> include_sinc;            // default: true iff all lengths equal
  bool include_dk_in_theta = false;            // restore full theta = dkL/2 + dphi/2

  std::size_t stages() const { return stage_lengths.size(); }
  bool lengths_equal() const;
  bool sinc_enabled() const { return include_sinc.value_or(lengths_equal()); }
  void validate() const;
};

// F = N exp[-(W_s+W_i)^2 (1+jC_p)/4 sigma_p^2] sinc(W_s/A + W_i/B) e^{j(W_s/A + W_i/B)}
// on detunings W = omega - omega_p0. Grid must span at least +/-4 sigma_p along
// the (W_s + W_i) direction.
JsfGrid build_simple_jsf(const SimpleJsfParams& params, const PumpSpec& pump,
                         const SpectralGrid& grid);

// Single-fiber JSF from physical dispersion: pump envelope times
// sinc(dk L/2) e^{j dk L/2}.
JsfGrid build_single_fiber_jsf(const PumpSpec& pump, const FiberSpec& fiber,
                               const SpectralGrid& grid);

// N-stage NLI JSF as the per-stage composition
//   F = pump * sum_n L_n S_n e^{j Phi_n},
//   S_n = sinc(dk L_n/2) e^{j dk L_n/2} (or 1 with sinc disabled),
//   Phi_n = sum_{m<n} (dphi_DM + [dk L_m when include_dk_in_theta]).
// Equal lengths collapse to pump * sinc * H(theta); unequal lengths without
// sinc collapse to pump * K(theta).
JsfGrid build_nli_jsf(const NliDesign& design, const PumpSpec& pump,
                      const FiberSpec& fiber, const SpectralGrid& grid);

enum class Axis { Signal, Idler };

// Intensity marginal: integral of |F|^2 over the other axis; integrates to 1.
Marginal marginal_intensity(const JsfGrid& jsf, Axis axis);

struct IslandWindow {
  int m = 0;
  double omega_s_center = 0, omega_i_center = 0;      // refined on the grid
  double omega_s_analytic = 0, omega_i_analytic = 0;  // from dphi_DM = 2 m pi
  double detuning_lo = 0, detuning_hi = 0;  // |w_s - w_i| at adjacent cos(theta) zeros
};

// Analytic island center detuning (w_s - w_i)_m = sqrt(8 m pi / (k2_dm L_dm)),
// split symmetrically about the pump, refined by a local maximum search of
// |F|^2 along the anti-diagonal. Small-detuning media only.
IslandWindow island_window(const JsfGrid& jsf, int m, const DispersiveMediumSpec& dm,
                           const PumpSpec& pump, const FiberSpec& fiber);

}  // namespace jsfkit
