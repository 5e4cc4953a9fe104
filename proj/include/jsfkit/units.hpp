#pragma once

#include <cmath>

namespace jsfkit::units {

inline constexpr double c_light = 299792458.0;  // m/s, exact
inline constexpr double pi = 3.141592653589793238462643383279502884;

inline double omega_from_lambda(double lambda_m) { return 2.0 * pi * c_light / lambda_m; }
inline double lambda_from_omega(double omega) { return 2.0 * pi * c_light / omega; }

// engineering units -> SI
inline double nm(double v) { return v * 1e-9; }
inline double ps_per_km_nm(double v) { return v * 1e-12 / (1e3 * 1e-9); }        // -> s/m^2
inline double ps_per_km_nm2(double v) { return v * 1e-12 / (1e3 * 1e-9 * 1e-9); }  // -> s/m^3
inline double per_km(double v) { return v * 1e-3; }                               // -> 1/m

// SI -> engineering units (exact inverses of the above)
inline double to_nm(double v) { return v / 1e-9; }
inline double to_ps_per_km_nm(double v) { return v / (1e-12 / (1e3 * 1e-9)); }
inline double to_ps_per_km_nm2(double v) { return v / (1e-12 / (1e3 * 1e-9 * 1e-9)); }
inline double to_per_km(double v) { return v / 1e-3; }

// Common filter-bandwidth convention for the 1550 nm band:
// dlambda = (1550 nm)^2 sigma_f / (2 pi c), applied at any island center.
inline double filter_width_from_dlambda_nm(double dlambda_nm) {
  const double lam_ref = 1550e-9;
  return 2.0 * pi * c_light * (dlambda_nm * 1e-9) / (lam_ref * lam_ref);
}
inline double dlambda_nm_from_filter_width(double sigma_f) {
  const double lam_ref = 1550e-9;
  return sigma_f * lam_ref * lam_ref / (2.0 * pi * c_light) / 1e-9;
}

}  // namespace jsfkit::units
