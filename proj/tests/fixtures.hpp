#pragma once

// Shared test fixtures (the 1550 nm band scenario used throughout) and
// independent brute-force oracles. The oracles deliberately avoid the
// library's SVD/Gram code paths.

#include <cmath>
#include <complex>
#include <random>

#include "jsfkit/config.hpp"
#include "jsfkit/jsf.hpp"
#include "jsfkit/metrics.hpp"
#include "jsfkit/units.hpp"

namespace fixtures {

using namespace jsfkit;

inline PumpSpec pump_1550() { return PumpSpec::gaussian(1548.5e-9, 1.0e-9); }

inline FiberSpec dsf(double length_m) {
  FiberSpec f;
  f.length_L = length_m;
  f.lambda_zero = 1548.2e-9;
  f.d_slope = units::ps_per_km_nm2(0.075);
  f.gamma_Pp = units::per_km(1.0);
  return f;
}

inline DispersiveMediumSpec smf(double length_m) {
  DispersiveMediumSpec d;
  d.kind = DmKind::SmallDetuningQuadratic;
  d.length_Ldm = length_m;
  d.d_smf = units::ps_per_km_nm(17.0);
  return d;
}

inline SpectralGrid band_grid(std::size_t n) {
  return SpectralGrid::wavelength_window(1528e-9, 1568e-9, n);
}

inline JsfGrid two_stage(std::size_t n, double ldm = 7.0) {
  NliDesign d;
  d.stage_lengths = {50.0, 50.0};
  d.dm = smf(ldm);
  return build_nli_jsf(d, pump_1550(), dsf(50.0), band_grid(n));
}

inline JsfGrid n_stage(int stages, std::size_t n, double ldm = 7.0) {
  NliDesign d;
  d.stage_lengths.assign(static_cast<std::size_t>(stages), 50.0);
  d.dm = smf(ldm);
  return build_nli_jsf(d, pump_1550(), dsf(50.0), band_grid(n));
}

inline JsfGrid non_nli_100m(std::size_t n) {
  return build_single_fiber_jsf(pump_1550(), dsf(100.0), band_grid(n));
}

inline JsfGrid fig1_jsf(std::size_t n) {
  SimpleJsfParams params{1.2, 1.8, 0.0};
  const PumpSpec p = pump_1550();
  return build_simple_jsf(params, p, SpectralGrid::detuning_window(p.omega_p0(), 24.0 * p.sigma_p, n));
}

// separable Gaussian, exactly rank one
inline JsfGrid separable_gaussian(std::size_t n) {
  const PumpSpec p = pump_1550();
  JsfGrid jsf;
  jsf.grid = SpectralGrid::detuning_window(p.omega_p0(), 6.0 * p.sigma_p, n);
  jsf.values = CMat(n, n);
  const double wp0 = p.omega_p0(), s = p.sigma_p;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const double xs = (jsf.grid.omega_s[a] - wp0) / s;
      const double xi = (jsf.grid.omega_i[b] - wp0) / (1.4 * s);
      jsf.values(a, b) = std::exp(-0.5 * xs * xs - 0.5 * xi * xi);
    }
  jsf.normalize();
  return jsf;
}

// literal four-fold quadrature of the mode-exchange integral:
// E = sum F(s,i) F(s',i') F*(s,i') F*(s',i) over all index quadruples,
// with optional per-axis weights ws2[s] (f_s^2) and wi2 applied as in the
// heralded-correlation integrals. O(n^4); keep n <= 64.
inline double four_fold_E(const CMat& w, const std::vector<double>* fs2 = nullptr,
                          const std::vector<double>* fi2_on_i = nullptr) {
  const std::size_t ns = w.rows, ni = w.cols;
  std::complex<double> acc = 0.0;
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t sp = 0; sp < ns; ++sp) {
      std::complex<double> inner = 0.0;
      for (std::size_t i = 0; i < ni; ++i)
        for (std::size_t ip = 0; ip < ni; ++ip) {
          std::complex<double> t =
              w(s, i) * w(sp, ip) * std::conj(w(s, ip)) * std::conj(w(sp, i));
          if (fi2_on_i) t *= (*fi2_on_i)[i];
          inner += t;
        }
      if (fs2) inner *= (*fs2)[s] * (*fs2)[sp];
      acc += inner;
    }
  return acc.real();
}

inline std::mt19937_64 rng(std::uint64_t seed = 20260810ull) { return std::mt19937_64(seed); }

}  // namespace fixtures
