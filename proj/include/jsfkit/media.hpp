#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "jsfkit/units.hpp"

namespace jsfkit {

// Pump amplitude spectrum exp[-Omega^2 / 2 sigma_p^2]; the quoted FWHM is the
// FWHM of the *intensity* spectrum, so in angular frequency it equals
// 2 sigma_p sqrt(ln 2). Island centers do not depend on this convention but
// island widths do, hence it is fixed here once.
double sigma_from_fwhm(double fwhm_lambda, double lambda_p0);

struct PumpSpec {
  double lambda_p0 = 0;    // m
  double fwhm_lambda = 0;  // m, intensity-spectrum FWHM
  double sigma_p = 0;      // rad/s, amplitude-spectrum width (derived)
  double chirp_Cp = 0;     // dimensionless linear chirp

  static PumpSpec gaussian(double lambda_p0, double fwhm_lambda, double chirp_Cp = 0.0);
  double omega_p0() const { return units::omega_from_lambda(lambda_p0); }
  void validate() const;
};

// Nonlinear fiber (DSF): dispersion expanded about the pump.
struct FiberSpec {
  double length_L = 0;     // m
  double lambda_zero = 0;  // m, zero-GVD wavelength
  double d_slope = 0;      // s/m^3, GVD slope at lambda_zero
  double gamma_Pp = 0;     // 1/m, nonlinear phase term gamma*P_p

  double k2_p0(const PumpSpec& p) const {
    return p.lambda_p0 * p.lambda_p0 * d_slope * (p.lambda_p0 - lambda_zero) /
           (2.0 * units::pi * units::c_light);
  }
  double k3_p0(const PumpSpec& p) const {
    const double l2 = p.lambda_p0 * p.lambda_p0;
    const double tpc = 2.0 * units::pi * units::c_light;
    return -l2 * l2 * d_slope / (tpc * tpc);
  }
  void validate() const;
};

enum class DmKind {
  SmallDetuningQuadratic,  // e.g. SMF near 1550 nm: quadratic in (w_s - w_i)
  LargeDetuningLinear,     // first-order walk-off model
  SellmeierGlass,          // bulk fused silica, full Sellmeier phase
  Tabulated,               // sampled k(omega), rad/m
  ArbitraryPhase,          // sampled total phase phi(omega), rad (POF-style)
};

struct PhaseSamples {
  std::vector<double> omega;  // ascending, rad/s
  std::vector<double> value;  // rad/m (Tabulated) or rad (ArbitraryPhase)
  // linear interpolation; throws std::out_of_range outside the sampled span
  double at(double w) const;
};

struct DispersiveMediumSpec {
  DmKind kind = DmKind::SmallDetuningQuadratic;
  double length_Ldm = 0;  // m (ignored for ArbitraryPhase)

  // SmallDetuningQuadratic
  double d_smf = 0;  // s/m^2, GVD coefficient at the pump

  // LargeDetuningLinear
  double tau_s = 0, tau_i = 0;  // s/m, first-order walk-off
  double dk_dm0 = 0;            // 1/m, constant offset (default 0)
  double omega_s0 = 0, omega_i0 = 0;  // rad/s, expansion centers

  // Tabulated / ArbitraryPhase
  std::optional<PhaseSamples> phase_fn;

  // quadratic coefficient k''_DM(w_p0) implied by d_smf
  double k2_dm(const PumpSpec& p) const {
    return p.lambda_p0 * p.lambda_p0 * d_smf / (2.0 * units::pi * units::c_light);
  }
  void validate() const;
};

}  // namespace jsfkit
