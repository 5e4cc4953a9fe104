#include "jsfkit/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "jsfkit/units.hpp"

namespace jsfkit {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValues KeyValues::parse_string(const std::string& text) {
  KeyValues out;
  out.raw_ = text;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    if (out.kv_.count(key))
      throw std::invalid_argument("config: duplicate key '" + key + "'");
    out.kv_[key] = val;
  }
  return out;
}

KeyValues KeyValues::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

std::optional<std::string> KeyValues::get(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return std::nullopt;
  used_.insert(key);
  return it->second;
}

std::string KeyValues::require(const std::string& key) const {
  auto v = get(key);
  if (!v) throw std::invalid_argument("config: missing required key '" + key + "'");
  return *v;
}

double KeyValues::number(const std::string& key) const {
  const std::string v = require(key);
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key + "' is not a number: '" + v + "'");
  }
}

double KeyValues::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

bool KeyValues::flag_or(const std::string& key, bool fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw std::invalid_argument("config: key '" + key + "' is not a boolean: '" + *v + "'");
}

std::string KeyValues::str_or(const std::string& key, const std::string& fallback) const {
  auto v = get(key);
  return v ? *v : fallback;
}

std::vector<double> KeyValues::number_list(const std::string& key) const {
  const std::string v = require(key);
  std::vector<double> out;
  std::istringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("config: key '" + key + "' has a non-numeric item '" + item +
                                  "'");
    }
  }
  return out;
}

void KeyValues::reject_unknown() const {
  std::string unknown;
  for (const auto& [k, v] : kv_)
    if (!used_.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
  if (!unknown.empty())
    throw std::invalid_argument("config: unknown key(s): " + unknown);
}

namespace {

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::istringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ScenarioConfig ScenarioConfig::parse(const KeyValues& kv) {
  ScenarioConfig c;
  const std::string kind = kv.str_or("scenario", "nli");
  if (kind == "simple")
    c.kind = ScenarioKind::Simple;
  else if (kind == "single-fiber")
    c.kind = ScenarioKind::SingleFiber;
  else if (kind == "nli")
    c.kind = ScenarioKind::Nli;
  else
    throw std::invalid_argument("config: scenario must be simple | single-fiber | nli");

  if (auto e = kv.get("emit")) {
    c.emit = (*e == "none") ? std::vector<std::string>{} : split_list(*e);
  } else {
    c.emit = {"default"};
  }

  c.pump_lambda_nm = kv.number_or("pump.lambda_nm", c.pump_lambda_nm);
  c.pump_fwhm_nm = kv.number_or("pump.fwhm_nm", c.pump_fwhm_nm);
  c.pump_chirp = kv.number_or("pump.chirp", c.pump_chirp);

  c.fiber_length_m = kv.number_or("fiber.length_m", c.fiber_length_m);
  c.fiber_lambda_zero_nm = kv.number_or("fiber.lambda_zero_nm", c.fiber_lambda_zero_nm);
  c.fiber_slope_ps_km_nm2 = kv.number_or("fiber.slope_ps_km_nm2", c.fiber_slope_ps_km_nm2);
  c.fiber_gamma_pp_km = kv.number_or("fiber.gamma_pp_km", c.fiber_gamma_pp_km);

  c.dm_kind = kv.str_or("dm.kind", c.dm_kind);
  c.dm_length_m = kv.number_or("dm.length_m", c.dm_length_m);
  c.dm_d_smf_ps_km_nm = kv.number_or("dm.d_smf_ps_km_nm", c.dm_d_smf_ps_km_nm);
  c.dm_tau_s_ps_km = kv.number_or("dm.tau_s_ps_km", c.dm_tau_s_ps_km);
  c.dm_tau_i_ps_km = kv.number_or("dm.tau_i_ps_km", c.dm_tau_i_ps_km);
  c.dm_dk0_per_km = kv.number_or("dm.dk0_per_km", c.dm_dk0_per_km);
  c.dm_lambda_s0_nm = kv.number_or("dm.lambda_s0_nm", c.dm_lambda_s0_nm);
  c.dm_lambda_i0_nm = kv.number_or("dm.lambda_i0_nm", c.dm_lambda_i0_nm);
  c.dm_phase_file = kv.str_or("dm.phase_file", c.dm_phase_file);

  if (kv.has("nli.lengths_m")) c.nli_lengths_m = kv.number_list("nli.lengths_m");
  c.nli_stages = static_cast<int>(kv.number_or("nli.stages", c.nli_stages));
  c.nli_include_sinc = kv.str_or("nli.include_sinc", c.nli_include_sinc);
  c.nli_dk_in_theta = kv.flag_or("nli.dk_in_theta", c.nli_dk_in_theta);

  c.grid_n = static_cast<std::size_t>(kv.number_or("grid.n", static_cast<double>(c.grid_n)));
  c.grid_lambda_min_nm = kv.number_or("grid.lambda_min_nm", c.grid_lambda_min_nm);
  c.grid_lambda_max_nm = kv.number_or("grid.lambda_max_nm", c.grid_lambda_max_nm);
  c.grid_s_min_nm = kv.number_or("grid.signal_min_nm", c.grid_s_min_nm);
  c.grid_s_max_nm = kv.number_or("grid.signal_max_nm", c.grid_s_max_nm);
  c.grid_i_min_nm = kv.number_or("grid.idler_min_nm", c.grid_i_min_nm);
  c.grid_i_max_nm = kv.number_or("grid.idler_max_nm", c.grid_i_max_nm);
  c.grid_span_sigma = kv.number_or("grid.span_sigma", c.grid_span_sigma);

  c.simple_a_sigma = kv.number_or("simple.a_sigma", c.simple_a_sigma);
  c.simple_b_sigma = kv.number_or("simple.b_sigma", c.simple_b_sigma);

  c.filter_island_m = static_cast<int>(kv.number_or("filter.island_m", c.filter_island_m));
  c.filter_center_s_nm = kv.number_or("filter.center_s_nm", c.filter_center_s_nm);
  c.filter_center_i_nm = kv.number_or("filter.center_i_nm", c.filter_center_i_nm);
  c.filter_dlambda_nm = kv.number_or("filter.dlambda_nm", c.filter_dlambda_nm);
  c.filter_eta_s = kv.number_or("filter.eta_s", c.filter_eta_s);
  c.filter_eta_i = kv.number_or("filter.eta_i", c.filter_eta_i);
  c.filter_shape = kv.str_or("filter.shape", c.filter_shape);

  c.gain_g = kv.number_or("gain.g", c.gain_g);
  if (kv.has("gain.ladder")) c.gain_ladder = kv.number_list("gain.ladder");
  c.gain_order = static_cast<int>(kv.number_or("gain.order", c.gain_order));

  c.scan_parameter = kv.str_or("scan.parameter", c.scan_parameter);
  c.scan_min_nm = kv.number_or("scan.min_nm", c.scan_min_nm);
  c.scan_max_nm = kv.number_or("scan.max_nm", c.scan_max_nm);
  c.scan_points =
      static_cast<std::size_t>(kv.number_or("scan.points", static_cast<double>(c.scan_points)));
  if (kv.has("scan.stages")) c.scan_stages = kv.number_list("scan.stages");

  c.design_m = static_cast<int>(kv.number_or("design.m", c.design_m));
  c.design_stages = static_cast<int>(kv.number_or("design.stages", c.design_stages));
  c.design_l1_m = kv.number_or("design.l1_m", c.design_l1_m);

  c.schmidt_max_modes = static_cast<std::size_t>(
      kv.number_or("schmidt.max_modes", static_cast<double>(c.schmidt_max_modes)));
  c.out_prefix = kv.str_or("out.prefix", c.out_prefix);

  kv.reject_unknown();
  return c;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  return parse(KeyValues::parse_file(path));
}

std::string ScenarioConfig::serialize() const {
  std::ostringstream o;
  o.precision(17);
  const char* kind = this->kind == ScenarioKind::Simple
                         ? "simple"
                         : this->kind == ScenarioKind::SingleFiber ? "single-fiber" : "nli";
  o << "scenario = " << kind << "\n";
  o << "emit = ";
  if (emit.empty())
    o << "none";
  else
    for (std::size_t k = 0; k < emit.size(); ++k) o << (k ? "," : "") << emit[k];
  o << "\n";
  o << "pump.lambda_nm = " << pump_lambda_nm << "\n";
  o << "pump.fwhm_nm = " << pump_fwhm_nm << "\n";
  o << "pump.chirp = " << pump_chirp << "\n";
  o << "fiber.length_m = " << fiber_length_m << "\n";
  o << "fiber.lambda_zero_nm = " << fiber_lambda_zero_nm << "\n";
  o << "fiber.slope_ps_km_nm2 = " << fiber_slope_ps_km_nm2 << "\n";
  o << "fiber.gamma_pp_km = " << fiber_gamma_pp_km << "\n";
  o << "dm.kind = " << dm_kind << "\n";
  o << "dm.length_m = " << dm_length_m << "\n";
  o << "dm.d_smf_ps_km_nm = " << dm_d_smf_ps_km_nm << "\n";
  if (dm_tau_s_ps_km != 0 || dm_tau_i_ps_km != 0) {
    o << "dm.tau_s_ps_km = " << dm_tau_s_ps_km << "\n";
    o << "dm.tau_i_ps_km = " << dm_tau_i_ps_km << "\n";
    o << "dm.dk0_per_km = " << dm_dk0_per_km << "\n";
  }
  if (dm_lambda_s0_nm != 0) o << "dm.lambda_s0_nm = " << dm_lambda_s0_nm << "\n";
  if (dm_lambda_i0_nm != 0) o << "dm.lambda_i0_nm = " << dm_lambda_i0_nm << "\n";
  if (!dm_phase_file.empty()) o << "dm.phase_file = " << dm_phase_file << "\n";
  if (!nli_lengths_m.empty()) {
    o << "nli.lengths_m = ";
    for (std::size_t k = 0; k < nli_lengths_m.size(); ++k)
      o << (k ? "," : "") << nli_lengths_m[k];
    o << "\n";
  } else {
    o << "nli.stages = " << nli_stages << "\n";
  }
  o << "nli.include_sinc = " << nli_include_sinc << "\n";
  o << "nli.dk_in_theta = " << (nli_dk_in_theta ? "true" : "false") << "\n";
  o << "grid.n = " << grid_n << "\n";
  o << "grid.lambda_min_nm = " << grid_lambda_min_nm << "\n";
  o << "grid.lambda_max_nm = " << grid_lambda_max_nm << "\n";
  if (grid_s_min_nm > 0) {
    o << "grid.signal_min_nm = " << grid_s_min_nm << "\n";
    o << "grid.signal_max_nm = " << grid_s_max_nm << "\n";
    o << "grid.idler_min_nm = " << grid_i_min_nm << "\n";
    o << "grid.idler_max_nm = " << grid_i_max_nm << "\n";
  }
  o << "grid.span_sigma = " << grid_span_sigma << "\n";
  o << "simple.a_sigma = " << simple_a_sigma << "\n";
  o << "simple.b_sigma = " << simple_b_sigma << "\n";
  o << "filter.island_m = " << filter_island_m << "\n";
  if (filter_center_s_nm != 0) o << "filter.center_s_nm = " << filter_center_s_nm << "\n";
  if (filter_center_i_nm != 0) o << "filter.center_i_nm = " << filter_center_i_nm << "\n";
  o << "filter.dlambda_nm = " << filter_dlambda_nm << "\n";
  o << "filter.eta_s = " << filter_eta_s << "\n";
  o << "filter.eta_i = " << filter_eta_i << "\n";
  o << "filter.shape = " << filter_shape << "\n";
  o << "gain.g = " << gain_g << "\n";
  o << "gain.ladder = ";
  for (std::size_t k = 0; k < gain_ladder.size(); ++k) o << (k ? "," : "") << gain_ladder[k];
  o << "\n";
  o << "gain.order = " << gain_order << "\n";
  o << "scan.parameter = " << scan_parameter << "\n";
  o << "scan.min_nm = " << scan_min_nm << "\n";
  o << "scan.max_nm = " << scan_max_nm << "\n";
  o << "scan.points = " << scan_points << "\n";
  o << "scan.stages = ";
  for (std::size_t k = 0; k < scan_stages.size(); ++k) o << (k ? "," : "") << scan_stages[k];
  o << "\n";
  o << "design.m = " << design_m << "\n";
  o << "design.stages = " << design_stages << "\n";
  o << "design.l1_m = " << design_l1_m << "\n";
  o << "schmidt.max_modes = " << schmidt_max_modes << "\n";
  o << "out.prefix = " << out_prefix << "\n";
  return o.str();
}

PumpSpec ScenarioConfig::pump() const {
  return PumpSpec::gaussian(units::nm(pump_lambda_nm), units::nm(pump_fwhm_nm), pump_chirp);
}

FiberSpec ScenarioConfig::fiber() const {
  FiberSpec f;
  f.length_L = fiber_length_m;
  f.lambda_zero = units::nm(fiber_lambda_zero_nm);
  f.d_slope = units::ps_per_km_nm2(fiber_slope_ps_km_nm2);
  f.gamma_Pp = units::per_km(fiber_gamma_pp_km);
  return f;
}

DispersiveMediumSpec ScenarioConfig::dm() const {
  DispersiveMediumSpec d;
  d.length_Ldm = dm_length_m;
  if (dm_kind == "smf-quadratic") {
    d.kind = DmKind::SmallDetuningQuadratic;
    d.d_smf = units::ps_per_km_nm(dm_d_smf_ps_km_nm);
  } else if (dm_kind == "linear-walkoff") {
    d.kind = DmKind::LargeDetuningLinear;
    d.tau_s = dm_tau_s_ps_km * 1e-15;  // ps/km -> s/m
    d.tau_i = dm_tau_i_ps_km * 1e-15;
    d.dk_dm0 = units::per_km(dm_dk0_per_km);
    d.omega_s0 = units::omega_from_lambda(units::nm(dm_lambda_s0_nm));
    d.omega_i0 = units::omega_from_lambda(units::nm(dm_lambda_i0_nm));
  } else if (dm_kind == "sellmeier-silica") {
    d.kind = DmKind::SellmeierGlass;
  } else if (dm_kind == "tabulated-k" || dm_kind == "arbitrary-phase") {
    d.kind = dm_kind == "tabulated-k" ? DmKind::Tabulated : DmKind::ArbitraryPhase;
    if (dm_phase_file.empty())
      throw std::invalid_argument("config: dm.phase_file required for kind " + dm_kind);
    PhaseSamples ps;
    std::ifstream in(dm_phase_file);
    if (!in) throw std::invalid_argument("config: cannot open dm.phase_file " + dm_phase_file);
    double w, v;
    char comma;
    while (in >> w >> comma >> v) {
      ps.omega.push_back(w);
      ps.value.push_back(v);
    }
    d.phase_fn = std::move(ps);
  } else {
    throw std::invalid_argument("config: unknown dm.kind '" + dm_kind + "'");
  }
  return d;
}

SpectralGrid ScenarioConfig::grid() const {
  if (kind == ScenarioKind::Simple) {
    const PumpSpec p = pump();
    return SpectralGrid::detuning_window(p.omega_p0(), grid_span_sigma * p.sigma_p, grid_n);
  }
  const bool per_axis = grid_s_min_nm > 0 && grid_s_max_nm > 0 && grid_i_min_nm > 0 &&
                        grid_i_max_nm > 0;
  if (per_axis)
    return SpectralGrid::uniform(units::omega_from_lambda(units::nm(grid_s_max_nm)),
                                 units::omega_from_lambda(units::nm(grid_s_min_nm)), grid_n,
                                 units::omega_from_lambda(units::nm(grid_i_max_nm)),
                                 units::omega_from_lambda(units::nm(grid_i_min_nm)), grid_n);
  return SpectralGrid::wavelength_window(units::nm(grid_lambda_min_nm),
                                         units::nm(grid_lambda_max_nm), grid_n);
}

NliDesign ScenarioConfig::design() const {
  NliDesign d;
  if (!nli_lengths_m.empty())
    d.stage_lengths = nli_lengths_m;
  else
    d.stage_lengths.assign(static_cast<std::size_t>(nli_stages), fiber_length_m);
  if (d.stage_lengths.size() >= 2) d.dm = dm();
  if (nli_include_sinc == "true")
    d.include_sinc = true;
  else if (nli_include_sinc == "false")
    d.include_sinc = false;
  else if (nli_include_sinc != "auto")
    throw std::invalid_argument("config: nli.include_sinc must be auto | true | false");
  d.include_dk_in_theta = nli_dk_in_theta;
  return d;
}

SimpleJsfParams ScenarioConfig::simple_params() const {
  return SimpleJsfParams{simple_a_sigma, simple_b_sigma, pump_chirp};
}

JsfGrid ScenarioConfig::build() const {
  switch (kind) {
    case ScenarioKind::Simple:
      return build_simple_jsf(simple_params(), pump(), grid());
    case ScenarioKind::SingleFiber: {
      FiberSpec f = fiber();
      return build_single_fiber_jsf(pump(), f, grid());
    }
    case ScenarioKind::Nli:
    default: {
      NliDesign d = design();
      FiberSpec f = fiber();
      if (d.stage_lengths.size() == 1) {
        f.length_L = d.stage_lengths.front();
        return build_single_fiber_jsf(pump(), f, grid());
      }
      return build_nli_jsf(d, pump(), f, grid());
    }
  }
}

FilterSpec ScenarioConfig::filter(const JsfGrid& jsf) const {
  FilterSpec f;
  if (filter_center_s_nm > 0 && filter_center_i_nm > 0) {
    f.center_s = units::omega_from_lambda(units::nm(filter_center_s_nm));
    f.center_i = units::omega_from_lambda(units::nm(filter_center_i_nm));
  } else {
    const auto w = island_window(jsf, filter_island_m, dm(), pump(), fiber());
    f.center_s = w.omega_s_center;
    f.center_i = w.omega_i_center;
  }
  const double width =
      filter_dlambda_nm > 0 ? units::filter_width_from_dlambda_nm(filter_dlambda_nm) : 0.0;
  f.width_s = f.width_i = width;
  f.eta_s = filter_eta_s;
  f.eta_i = filter_eta_i;
  f.shape = filter_shape == "gauss" ? FilterShape::Gauss : FilterShape::Rect;
  return f;
}

}  // namespace jsfkit
