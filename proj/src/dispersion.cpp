#include "jsfkit/dispersion.hpp"

#include <algorithm>
#include <cmath>

namespace jsfkit {

using units::c_light;
using units::pi;

double sigma_from_fwhm(double fwhm_lambda, double lambda_p0) {
  if (!(fwhm_lambda > 0) || !(lambda_p0 > 0))
    throw std::domain_error("sigma_from_fwhm: inputs must be positive");
  return pi * c_light * fwhm_lambda / (lambda_p0 * lambda_p0 * std::sqrt(std::log(2.0)));
}

PumpSpec PumpSpec::gaussian(double lambda_p0, double fwhm_lambda, double chirp_Cp) {
  PumpSpec p;
  p.lambda_p0 = lambda_p0;
  p.fwhm_lambda = fwhm_lambda;
  p.sigma_p = sigma_from_fwhm(fwhm_lambda, lambda_p0);
  p.chirp_Cp = chirp_Cp;
  return p;
}

void PumpSpec::validate() const {
  if (!(lambda_p0 > 0)) throw std::invalid_argument("pump: lambda_p0 must be > 0");
  if (!(fwhm_lambda > 0)) throw std::invalid_argument("pump: fwhm_lambda must be > 0");
  if (!(sigma_p > 0)) throw std::invalid_argument("pump: sigma_p must be > 0");
  const double expect = sigma_from_fwhm(fwhm_lambda, lambda_p0);
  if (std::abs(sigma_p - expect) > 1e-9 * expect)
    throw std::invalid_argument("pump: sigma_p inconsistent with fwhm_lambda");
}

void FiberSpec::validate() const {
  if (length_L < 0) throw std::invalid_argument("fiber: length_L must be >= 0");
  if (!(lambda_zero > 0)) throw std::invalid_argument("fiber: lambda_zero must be > 0");
}

void DispersiveMediumSpec::validate() const {
  if (length_Ldm < 0) throw std::invalid_argument("dm: length_Ldm must be >= 0");
  switch (kind) {
    case DmKind::SmallDetuningQuadratic:
      break;
    case DmKind::LargeDetuningLinear:
      if (!(omega_s0 > 0) || !(omega_i0 > 0))
        throw std::invalid_argument("dm: large-detuning kind needs omega_s0/omega_i0");
      break;
    case DmKind::SellmeierGlass:
      break;
    case DmKind::Tabulated:
    case DmKind::ArbitraryPhase:
      if (!phase_fn || phase_fn->omega.size() < 2)
        throw std::invalid_argument("dm: tabulated/arbitrary kind needs phase samples");
      break;
  }
}

double PhaseSamples::at(double w) const {
  if (omega.empty() || w < omega.front() || w > omega.back())
    throw std::out_of_range("phase samples do not cover requested frequency");
  auto it = std::upper_bound(omega.begin(), omega.end(), w);
  if (it == omega.begin()) return value.front();
  std::size_t hi = static_cast<std::size_t>(it - omega.begin());
  if (hi >= omega.size()) return value.back();
  std::size_t lo = hi - 1;
  double t = (w - omega[lo]) / (omega[hi] - omega[lo]);
  return value[lo] + t * (value[hi] - value[lo]);
}

double delta_k_dsf(double omega_s, double omega_i, const PumpSpec& pump,
                   const FiberSpec& fiber) {
  const double d = omega_s - omega_i;
  const double s = omega_s + omega_i - 2.0 * pump.omega_p0();
  return fiber.k2_p0(pump) / 4.0 * d * d + fiber.k3_p0(pump) / 8.0 * s * d * d -
         2.0 * fiber.gamma_Pp;
}

double delta_phi_dm(double omega_s, double omega_i, const PumpSpec& pump,
                    const DispersiveMediumSpec& dm) {
  switch (dm.kind) {
    case DmKind::SmallDetuningQuadratic: {
      const double d = omega_s - omega_i;
      return pump.lambda_p0 * pump.lambda_p0 * dm.d_smf * dm.length_Ldm /
             (8.0 * pi * c_light) * d * d;
    }
    case DmKind::LargeDetuningLinear: {
      const double os = omega_s - dm.omega_s0;
      const double oi = omega_i - dm.omega_i0;
      return dm.length_Ldm * (dm.dk_dm0 + dm.tau_s * os + dm.tau_i * oi);
    }
    case DmKind::SellmeierGlass: {
      const double wp = 0.5 * (omega_s + omega_i);
      return dm.length_Ldm * (2.0 * silica_k(wp) - silica_k(omega_s) - silica_k(omega_i));
    }
    case DmKind::Tabulated: {
      const double wp = 0.5 * (omega_s + omega_i);
      const auto& f = *dm.phase_fn;
      return dm.length_Ldm * (2.0 * f.at(wp) - f.at(omega_s) - f.at(omega_i));
    }
    case DmKind::ArbitraryPhase: {
      const double wp = 0.5 * (omega_s + omega_i);
      const auto& f = *dm.phase_fn;
      return 2.0 * f.at(wp) - f.at(omega_s) - f.at(omega_i);
    }
  }
  return 0.0;
}

double stripe_orientation(double tau_s, double tau_i) {
  if (tau_s == 0.0 && tau_i == 0.0)
    throw std::domain_error("stripe_orientation: tau_s and tau_i both zero");
  if (tau_i == 0.0) return 90.0;  // limit; +/-90 identical mod 180
  double rho = -std::atan(tau_s / tau_i) * 180.0 / pi;
  if (rho <= -90.0) rho += 180.0;
  return rho;
}

// Malitson (1965) fused-silica Sellmeier coefficients, lambda in micrometers.
double silica_index(double lambda_m) {
  const double l = lambda_m * 1e6;
  const double l2 = l * l;
  const double b1 = 0.6961663, b2 = 0.4079426, b3 = 0.8974794;
  const double c1 = 0.0684043 * 0.0684043;
  const double c2 = 0.1162414 * 0.1162414;
  const double c3 = 9.896161 * 9.896161;
  double n2 = 1.0 + b1 * l2 / (l2 - c1) + b2 * l2 / (l2 - c2) + b3 * l2 / (l2 - c3);
  return std::sqrt(n2);
}

double silica_k(double omega) {
  return silica_index(units::lambda_from_omega(omega)) * omega / c_light;
}

double silica_k1(double omega) {
  const double h = 1e-6 * omega;
  return (silica_k(omega + h) - silica_k(omega - h)) / (2.0 * h);
}

double walkoff_tau(double omega_p0, double omega_x0) {
  return silica_k1(omega_p0) - silica_k1(omega_x0);
}

}  // namespace jsfkit
