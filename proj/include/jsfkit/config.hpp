#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "jsfkit/filters.hpp"
#include "jsfkit/jsf.hpp"

namespace jsfkit {

// Flat `key = value` text with dotted section names and '#' comments.
// Every key must be consumed by the scenario parser; leftovers are rejected
// with their key path.
class KeyValues {
 public:
  static KeyValues parse_string(const std::string& text);
  static KeyValues parse_file(const std::string& path);

  std::optional<std::string> get(const std::string& key) const;
  std::string require(const std::string& key) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  bool flag_or(const std::string& key, bool fallback) const;
  std::string str_or(const std::string& key, const std::string& fallback) const;
  std::vector<double> number_list(const std::string& key) const;
  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  // throws std::invalid_argument naming any key never read
  void reject_unknown() const;
  const std::string& raw_text() const { return raw_; }

 private:
  std::map<std::string, std::string> kv_;
  mutable std::set<std::string> used_;
  std::string raw_;
};

enum class ScenarioKind { Simple, SingleFiber, Nli };

// Engineering-unit scenario description; SI specs are derived on demand so a
// serialize/parse round trip preserves the numbers exactly as given.
struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Nli;
  std::vector<std::string> emit;  // empty list allowed: manifest only

  // pump
  double pump_lambda_nm = 1548.5, pump_fwhm_nm = 1.0, pump_chirp = 0.0;
  // fiber (per stage)
  double fiber_length_m = 50.0, fiber_lambda_zero_nm = 1548.2;
  double fiber_slope_ps_km_nm2 = 0.075, fiber_gamma_pp_km = 1.0;
  // dispersive medium
  std::string dm_kind = "smf-quadratic";
  double dm_length_m = 7.0, dm_d_smf_ps_km_nm = 17.0;
  double dm_tau_s_ps_km = 0.0, dm_tau_i_ps_km = 0.0, dm_dk0_per_km = 0.0;
  double dm_lambda_s0_nm = 0.0, dm_lambda_i0_nm = 0.0;
  std::string dm_phase_file;
  // interferometer
  std::vector<double> nli_lengths_m;  // empty: `nli_stages` copies of fiber_length_m
  int nli_stages = 2;
  std::string nli_include_sinc = "auto";  // auto | true | false
  bool nli_dk_in_theta = false;
  // grid
  std::size_t grid_n = 512;
  double grid_lambda_min_nm = 1528.0, grid_lambda_max_nm = 1568.0;
  // optional per-axis windows for non-degenerate bands (0 = use the common one)
  double grid_s_min_nm = 0, grid_s_max_nm = 0, grid_i_min_nm = 0, grid_i_max_nm = 0;
  double grid_span_sigma = 24.0;  // Simple scenario: detuning half-window
  // simple JSF
  double simple_a_sigma = 1.2, simple_b_sigma = 1.8;
  // filter
  int filter_island_m = 1;
  double filter_center_s_nm = 0.0, filter_center_i_nm = 0.0;  // 0: use island
  double filter_dlambda_nm = 0.0;                             // 0: no filter
  double filter_eta_s = 1.0, filter_eta_i = 1.0;
  std::string filter_shape = "rect";
  // gain
  double gain_g = 0.1;
  std::vector<double> gain_ladder{0.3, 1.5, 3.0};
  int gain_order = 40;
  // scan
  std::string scan_parameter = "filter_bandwidth";  // | gain | stage_count
  double scan_min_nm = 0.2, scan_max_nm = 4.0;
  std::size_t scan_points = 39;
  std::vector<double> scan_stages{2, 3, 4, 5};
  // design queries
  int design_m = 1, design_stages = 2;
  double design_l1_m = 50.0;
  // schmidt output
  std::size_t schmidt_max_modes = 8;
  std::string out_prefix = "run";

  static ScenarioConfig parse(const KeyValues& kv);
  static ScenarioConfig load(const std::string& path);
  std::string serialize() const;

  PumpSpec pump() const;
  FiberSpec fiber() const;
  DispersiveMediumSpec dm() const;
  SpectralGrid grid() const;
  NliDesign design() const;
  SimpleJsfParams simple_params() const;
  JsfGrid build() const;
  // filter for the built JSF; island centering needs the JSF for refinement
  FilterSpec filter(const JsfGrid& jsf) const;
  bool has_filter() const { return filter_dlambda_nm > 0; }
};

}  // namespace jsfkit
