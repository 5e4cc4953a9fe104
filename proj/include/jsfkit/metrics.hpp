#pragma once

#include <optional>

#include "jsfkit/filters.hpp"
#include "jsfkit/jsf.hpp"

namespace jsfkit {

struct PairProbabilities {
  double P_s = 0, P_i = 0, P_c = 0;  // per-pulse detection probabilities
  std::vector<Diagnostic> diagnostics;
};

// P_s(i) = eta G^2 integral |F f_s(i)|^2 ; P_c = eta_s eta_i G^2 integral |F f_s f_i|^2
PairProbabilities singles_and_coincidences(const JsfGrid& jsf, const FilterSpec& filt,
                                           double G);

struct Efficiencies {
  std::optional<double> xi_s, xi_i;  // collection: P_c / P_i(s)
  std::optional<double> h_s, h_i;    // heralding: xi / eta
};

Efficiencies collection_and_heralding(const JsfGrid& jsf, const FilterSpec& filt);

struct FilteredPurity {
  std::optional<double> T, R;      // transmitted / rejected heralded weights
  std::optional<double> purity;    // T^2 sum rbar^4 + R^2
  std::optional<double> sum_r4;    // sum rbar_k^4 of the two-side-filtered JSF
};

FilteredPurity filtered_heralded_purity(const JsfGrid& jsf, const FilterSpec& filt);

// 1 + Ebar/Abar of the one-side-filtered JSF f_side * F
std::optional<double> g2_one_side_filtered(const JsfGrid& jsf, const FilterSpec& filt,
                                           Axis side);

// Heralded auto-correlation: 2 P_c / (h_s h_i) * (1 + Ebar/Abar), eta fixed
// to 1 inside P_c and with the f_s^2(w_s) f_s^2(w'_s) f_i^2(w_i) weightings.
std::optional<double> heralded_auto_g2(const JsfGrid& jsf, const FilterSpec& filt,
                                       double G);

struct MetricsReport {
  double gain_G = 0;
  double P_s = 0, P_i = 0, P_c = 0;
  std::optional<double> xi_s, xi_i, h_s, h_i;
  std::optional<double> T, R, purity_filtered;
  std::optional<double> g2_bar_s, g2_bar_i;
  std::optional<double> heralded_g2;
  std::vector<Diagnostic> diagnostics;
};

MetricsReport compute_metrics(const JsfGrid& jsf, const FilterSpec& filt, double G);

struct ScanRow {
  double dlambda_f_nm = 0;
  std::optional<double> g2s, g2i, xi_s, xi_i;
};

// Common-bandwidth sweep with both filter centers fixed; widths from
// dlambda via the 1550 nm band conversion.
std::vector<ScanRow> bandwidth_scan(const JsfGrid& jsf, double center_s, double center_i,
                                    double dlam_lo_nm, double dlam_hi_nm, std::size_t points);

}  // namespace jsfkit
