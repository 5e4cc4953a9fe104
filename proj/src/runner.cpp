#include "jsfkit/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "jsfkit/design.hpp"
#include "jsfkit/units.hpp"
#include "json.hpp"

namespace jsfkit {

namespace fs = std::filesystem;

namespace {

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string gain_tag(double g) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", g);
  std::string s = buf;
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

struct Emitter {
  const ScenarioConfig& cfg;
  const RunOptions& opt;
  io::RunManifest manifest;
  fs::path dir;

  Emitter(const ScenarioConfig& c, const RunOptions& o) : cfg(c), opt(o), dir(o.out_dir) {
    fs::create_directories(dir);
    manifest.started_utc = now_utc();
  }

  bool wants(const std::string& tag, bool by_default) const {
    const auto& e = cfg.emit;
    if (std::find(e.begin(), e.end(), "default") != e.end()) return by_default;
    return std::find(e.begin(), e.end(), tag) != e.end();
  }

  fs::path path(const std::string& suffix) const { return dir / (cfg.out_prefix + suffix); }

  void record(const fs::path& p) {
    manifest.files.emplace_back(p.filename().string(), io::hex64(io::checksum_file(p)));
  }

  void warn_all(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds) manifest.warnings.push_back(d);
  }

  int finish(const std::string& digest_src) {
    manifest.config_digest =
        io::hex64(io::fnv1a(digest_src.data(), digest_src.size()));
    manifest.finished_utc = now_utc();
    const fs::path mp = path("_manifest.json");
    io::write_manifest_json(mp, manifest);
    return (opt.strict && !manifest.warnings.empty()) ? 3 : 0;
  }

  void export_grid(const std::string& stem, const SpectralGrid& g, const CMat& v) {
    if (opt.format == "bin") {
      const fs::path p = path(stem + ".bin");
      io::write_grid_bin(p, g, v);
      record(p);
    } else {
      const fs::path p = path(stem + ".csv");
      io::write_grid_csv(p, g, v);
      record(p);
    }
  }
};

void cmd_jsf(Emitter& em, const JsfGrid& jsf) {
  if (em.wants("grid", true)) em.export_grid("_jsf", jsf.grid, jsf.values);
  if (em.wants("marginals", true)) {
    const auto ms = marginal_intensity(jsf, Axis::Signal);
    const auto mi = marginal_intensity(jsf, Axis::Idler);
    auto ps = em.path("_marginal_signal.csv");
    auto pi = em.path("_marginal_idler.csv");
    io::write_marginal_csv(ps, ms);
    io::write_marginal_csv(pi, mi);
    em.record(ps);
    em.record(pi);
  }
}

void cmd_schmidt(Emitter& em, const JsfGrid& jsf) {
  const auto dec = schmidt_decompose(jsf);
  if (em.wants("summary", true)) {
    auto p = em.path("_schmidt.json");
    io::write_schmidt_json(p, dec);
    em.record(p);
  }
  if (em.wants("modes", true)) {
    for (const auto& p :
         io::write_mode_dumps(em.dir, em.cfg.out_prefix, dec, em.cfg.schmidt_max_modes))
      em.record(p);
  }
}

void cmd_metrics(Emitter& em, const JsfGrid& jsf) {
  const FilterSpec filt = em.cfg.filter(jsf);
  const MetricsReport r = compute_metrics(jsf, filt, em.cfg.gain_g);
  em.warn_all(r.diagnostics);
  auto p = em.path("_metrics.json");
  io::write_metrics_json(p, r);
  em.record(p);
}

void cmd_highgain(Emitter& em, const JsfGrid& jsf) {
  std::vector<io::ModeIndexRow> rows;
  nlohmann::json summary = nlohmann::json::array();
  for (double G : em.cfg.gain_ladder) {
    const auto gf = green_series(jsf, G, em.cfg.gain_order);
    em.warn_all(gf.diagnostics);
    nlohmann::json entry;
    entry["G"] = G;
    entry["truncation_order"] = gf.truncation_order;
    if (em.cfg.has_filter()) {
      const FilterSpec filt = em.cfg.filter(jsf);
      const auto coeffs = highgain_mode_indices(gf, filt);
      for (std::size_t k = 0; k < coeffs.size() && k < 32; ++k)
        rows.push_back({k + 1, coeffs[k], G});
      entry["leading_coefficient"] = coeffs.empty() ? 0.0 : coeffs.front();
    }
    if (em.wants("kernels", false))
      em.export_grid("_h2s_G" + gain_tag(G), gf.grid, gf.h2s);
    summary.push_back(entry);
  }
  if (!rows.empty()) {
    auto p = em.path("_mode_index.csv");
    io::write_mode_index_csv(p, rows);
    em.record(p);
  }
  auto p = em.path("_highgain.json");
  std::ofstream(p) << summary.dump(2) << "\n";
  em.record(p);
}

void cmd_scan(Emitter& em, const JsfGrid& jsf) {
  const auto& c = em.cfg;
  if (c.scan_parameter == "filter_bandwidth") {
    const FilterSpec base = c.filter(jsf);
    const auto rows = bandwidth_scan(jsf, base.center_s, base.center_i, c.scan_min_nm,
                                     c.scan_max_nm, c.scan_points);
    auto p = em.path("_scan_bandwidth.csv");
    io::write_scan_csv(p, rows);
    em.record(p);
  } else if (c.scan_parameter == "gain") {
    std::vector<io::ModeIndexRow> rows;
    for (double G : c.gain_ladder) {
      const auto gf = green_series(jsf, G, c.gain_order);
      em.warn_all(gf.diagnostics);
      const auto coeffs = highgain_mode_indices(gf, c.filter(jsf));
      for (std::size_t k = 0; k < coeffs.size() && k < 32; ++k)
        rows.push_back({k + 1, coeffs[k], G});
    }
    auto p = em.path("_scan_gain.csv");
    io::write_mode_index_csv(p, rows);
    em.record(p);
  } else if (c.scan_parameter == "stage_count") {
    std::ofstream out(em.path("_scan_stages.csv"));
    out << "stages,dlambda_f_nm,g2s,g2i,xi_s,xi_i\n";
    for (double ns : c.scan_stages) {
      ScenarioConfig cc = c;
      cc.nli_lengths_m.clear();
      cc.nli_stages = static_cast<int>(ns);
      const JsfGrid j = cc.build();
      const FilterSpec filt = cc.filter(j);
      ScanRow r;
      r.g2s = g2_one_side_filtered(j, filt, Axis::Signal);
      r.g2i = g2_one_side_filtered(j, filt, Axis::Idler);
      const auto e = collection_and_heralding(j, filt);
      char line[256];
      std::snprintf(line, sizeof(line), "%d,%.12g,%.17g,%.17g,%.17g,%.17g\n",
                    static_cast<int>(ns), cc.filter_dlambda_nm, r.g2s.value_or(NAN),
                    r.g2i.value_or(NAN), e.xi_s.value_or(NAN), e.xi_i.value_or(NAN));
      out << line;
    }
    out.close();
    em.record(em.path("_scan_stages.csv"));
  } else {
    throw std::invalid_argument("scan.parameter must be filter_bandwidth | gain | stage_count");
  }
}

void cmd_design(Emitter& em) {
  const auto& c = em.cfg;
  nlohmann::json j;
  const PumpSpec pump = c.pump();
  const DispersiveMediumSpec dm = c.dm();
  if (dm.kind == DmKind::SmallDetuningQuadratic) {
    j["round_island_ldm_m"] = round_island_ldm(c.design_m, c.design_stages, pump, dm);
    j["stripe_width_rad_s"] = stripe_width(c.design_m, pump, dm);
  }
  if (dm.kind == DmKind::LargeDetuningLinear) {
    const auto e = elliptical_condition(dm.tau_s, dm.tau_i, dm.length_Ldm);
    j["elliptical"] = {{"feasible", e.feasible}, {"sigma_p_sq", e.sigma_p_sq}};
  }
  j["binomial_lengths_m"] = binomial_lengths(c.design_stages, c.design_l1_m);
  auto p = em.path("_design.json");
  std::ofstream(p) << j.dump(2) << "\n";
  em.record(p);
}

}  // namespace

int run_subcommand(const std::string& cmd, const RunOptions& opt) {
  const KeyValues kv = KeyValues::parse_file(opt.config_path);
  ScenarioConfig cfg = ScenarioConfig::parse(kv);
  if (opt.grid_n) cfg.grid_n = *opt.grid_n;
  if (opt.format != "csv" && opt.format != "bin")
    throw std::invalid_argument("--format must be csv or bin");

  Emitter em(cfg, opt);
  if (cfg.emit.empty()) {
    // nothing requested: manifest only
    return em.finish(kv.raw_text());
  }

  if (cmd == "design") {
    cmd_design(em);
    return em.finish(kv.raw_text());
  }

  const JsfGrid jsf = cfg.build();
  em.warn_all(jsf.diagnostics);

  if (cmd == "jsf")
    cmd_jsf(em, jsf);
  else if (cmd == "schmidt")
    cmd_schmidt(em, jsf);
  else if (cmd == "metrics")
    cmd_metrics(em, jsf);
  else if (cmd == "highgain")
    cmd_highgain(em, jsf);
  else if (cmd == "scan")
    cmd_scan(em, jsf);
  else
    throw std::invalid_argument("unknown subcommand '" + cmd + "'");

  return em.finish(kv.raw_text());
}

}  // namespace jsfkit
