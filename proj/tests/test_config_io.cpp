#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "jsfkit/config.hpp"
#include "jsfkit/io.hpp"
#include "jsfkit/metrics.hpp"
#include "jsfkit/runner.hpp"

using namespace jsfkit;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* name) {
  auto p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const char* kTwoStageCfg =
    "# two-stage 1550 nm scenario\n"
    "scenario = nli\n"
    "pump.lambda_nm = 1548.5\n"
    "pump.fwhm_nm = 1.0\n"
    "fiber.length_m = 50\n"
    "dm.kind = smf-quadratic\n"
    "dm.length_m = 7\n"
    "dm.d_smf_ps_km_nm = 17\n"
    "nli.stages = 2\n"
    "grid.n = 96\n"
    "filter.island_m = 1\n"
    "filter.dlambda_nm = 1.5\n"
    "out.prefix = t\n";

}  // namespace

TEST_CASE("key-value parsing") {
  auto kv = KeyValues::parse_string("a.b = 1.5 # comment\n\n# full line\nc = x,y\n");
  CHECK(kv.number("a.b") == 1.5);
  CHECK(*kv.get("c") == "x,y");
  CHECK_NOTHROW(kv.reject_unknown());

  auto kv2 = KeyValues::parse_string("a = 1\nb = 2\n");
  kv2.number("a");
  CHECK_THROWS_WITH_AS(kv2.reject_unknown(), "config: unknown key(s): b",
                       std::invalid_argument);

  CHECK_THROWS_AS(KeyValues::parse_string("a = 1\na = 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(KeyValues::parse_string("novalue\n"), std::invalid_argument);
  auto kv3 = KeyValues::parse_string("n = abc\n");
  CHECK_THROWS_AS(kv3.number("n"), std::invalid_argument);
}

TEST_CASE("scenario config parses, builds, and round-trips") {
  const auto kv = KeyValues::parse_string(kTwoStageCfg);
  const auto cfg = ScenarioConfig::parse(kv);
  CHECK(cfg.kind == ScenarioKind::Nli);
  CHECK(cfg.grid_n == 96);
  CHECK(cfg.pump().sigma_p == doctest::Approx(4.7177554577e11).epsilon(1e-9));
  CHECK(cfg.fiber().d_slope == doctest::Approx(75.0).epsilon(1e-12));
  CHECK(cfg.dm().d_smf == doctest::Approx(1.7e-5).epsilon(1e-12));

  // engineering values survive serialize/parse exactly
  const std::string text = cfg.serialize();
  const auto cfg2 = ScenarioConfig::parse(KeyValues::parse_string(text));
  CHECK(cfg2.serialize() == text);
  CHECK(cfg2.pump_lambda_nm == cfg.pump_lambda_nm);
  CHECK(cfg2.dm_d_smf_ps_km_nm == 17.0);
  CHECK(cfg2.fiber_slope_ps_km_nm2 == 0.075);

  const JsfGrid jsf = cfg.build();
  CHECK(jsf.normalized);
  CHECK(jsf.grid.n_s() == 96);

  // unknown keys are rejected with their path
  CHECK_THROWS_AS(
      ScenarioConfig::parse(KeyValues::parse_string("scenario = nli\npump.lambada = 1\n")),
      std::invalid_argument);

  // invalid sub-configs surface on build/use, not silently
  auto bad_grid = ScenarioConfig::parse(KeyValues::parse_string("scenario = nli\ngrid.n = 8\n"));
  CHECK_THROWS_AS(bad_grid.build(), std::invalid_argument);
  auto bad_sinc = ScenarioConfig::parse(
      KeyValues::parse_string("scenario = nli\nnli.include_sinc = maybe\n"));
  CHECK_THROWS_AS(bad_sinc.build(), std::invalid_argument);
  auto bad_eta =
      ScenarioConfig::parse(KeyValues::parse_string("scenario = nli\nfilter.eta_s = 1.5\n"
                                                    "filter.dlambda_nm = 1\ngrid.n = 64\n"));
  const JsfGrid small = bad_eta.build();
  CHECK_THROWS_AS(compute_metrics(small, bad_eta.filter(small), 0.1), std::invalid_argument);
}

TEST_CASE("binary grid round trip is bit exact") {
  auto jsf = fixtures::two_stage(64);
  const auto dir = temp_dir("jsfkit_io_test");
  const auto p = dir / "g.bin";
  io::write_grid_bin(p, jsf.grid, jsf.values);
  const auto back = io::read_grid_bin(p);
  REQUIRE(back.values.size() == jsf.values.size());
  for (std::size_t k = 0; k < jsf.values.size(); ++k)
    CHECK(back.values.a[k] == jsf.values.a[k]);
  CHECK(back.grid.d_omega_s == jsf.grid.d_omega_s);
  CHECK(back.grid.omega_s.front() == jsf.grid.omega_s.front());
}

TEST_CASE("fnv1a checksum vectors") {
  CHECK(io::hex64(io::fnv1a("", 0)) == "cbf29ce484222325");
  CHECK(io::hex64(io::fnv1a("a", 1)) == "af63dc4c8601ec8c");
}

TEST_CASE("runner pipelines write deterministic artifacts") {
  const auto dir = temp_dir("jsfkit_runner_test");
  const auto cfg_path = dir / "t.cfg";
  std::ofstream(cfg_path) << kTwoStageCfg;

  RunOptions opt;
  opt.config_path = cfg_path.string();
  opt.out_dir = (dir / "out1").string();
  CHECK(run_subcommand("jsf", opt) == 0);
  CHECK(fs::exists(dir / "out1" / "t_jsf.csv"));
  CHECK(fs::exists(dir / "out1" / "t_marginal_signal.csv"));
  CHECK(fs::exists(dir / "out1" / "t_manifest.json"));

  // identical config -> identical data file checksums
  opt.out_dir = (dir / "out2").string();
  CHECK(run_subcommand("jsf", opt) == 0);
  CHECK(io::checksum_file(dir / "out1" / "t_jsf.csv") ==
        io::checksum_file(dir / "out2" / "t_jsf.csv"));

  opt.out_dir = (dir / "out3").string();
  CHECK(run_subcommand("schmidt", opt) == 0);
  CHECK(fs::exists(dir / "out3" / "t_schmidt.json"));
  CHECK(fs::exists(dir / "out3" / "t_signal_mode_1.csv"));
  CHECK(run_subcommand("metrics", opt) == 0);
  CHECK(fs::exists(dir / "out3" / "t_metrics.json"));
  CHECK(run_subcommand("design", opt) == 0);
  CHECK(fs::exists(dir / "out3" / "t_design.json"));

  // empty emit list: manifest only, exit success
  const auto empty_cfg = dir / "empty.cfg";
  std::ofstream(empty_cfg) << "scenario = nli\nemit = none\nout.prefix = e\ngrid.n = 64\n";
  RunOptions opt2;
  opt2.config_path = empty_cfg.string();
  opt2.out_dir = (dir / "out4").string();
  CHECK(run_subcommand("jsf", opt2) == 0);
  CHECK(fs::exists(dir / "out4" / "e_manifest.json"));
  CHECK_FALSE(fs::exists(dir / "out4" / "e_jsf.csv"));

  // scan subcommand emits the bandwidth table
  const auto scan_cfg = dir / "scan.cfg";
  std::ofstream(scan_cfg) << kTwoStageCfg << "scan.min_nm = 1.0\nscan.max_nm = 2.0\n"
                          << "scan.points = 3\n";
  RunOptions opt3;
  opt3.config_path = scan_cfg.string();
  opt3.out_dir = (dir / "out5").string();
  CHECK(run_subcommand("scan", opt3) == 0);
  CHECK(fs::exists(dir / "out5" / "t_scan_bandwidth.csv"));

  // validation failures surface as invalid_argument (CLI exit code 2)
  const auto bad_cfg = dir / "bad.cfg";
  std::ofstream(bad_cfg) << "scenario = warp\n";
  RunOptions opt4;
  opt4.config_path = bad_cfg.string();
  opt4.out_dir = (dir / "out6").string();
  CHECK_THROWS_AS(run_subcommand("jsf", opt4), std::invalid_argument);
}

TEST_CASE("arbitrary-phase medium loads its samples from a file") {
  const auto dir = temp_dir("jsfkit_phase_test");
  const double wp0 = fixtures::pump_1550().omega_p0();
  {
    std::ofstream f(dir / "phase.csv");
    f.precision(17);
    for (int k = -60; k <= 60; ++k) {
      const double w = wp0 + k * 2e11;
      f << w << "," << 1e-25 * (w - wp0) * (w - wp0) << "\n";  // quadratic phase
    }
  }
  std::string cfg_text =
      "scenario = nli\nnli.stages = 2\ngrid.n = 64\n"
      "grid.lambda_min_nm = 1544\ngrid.lambda_max_nm = 1553\n"
      "dm.kind = arbitrary-phase\ndm.phase_file = " + (dir / "phase.csv").string() +
      "\nout.prefix = pof\n";
  const auto cfg = ScenarioConfig::parse(KeyValues::parse_string(cfg_text));
  const auto dm = cfg.dm();
  CHECK(dm.kind == DmKind::ArbitraryPhase);
  REQUIRE(dm.phase_fn.has_value());
  CHECK(dm.phase_fn->omega.size() == 121);
  // a pure quadratic phase phi(w) gives 2 phi(wp) - phi(ws) - phi(wi) < 0
  CHECK(delta_phi_dm(wp0 - 2e12, wp0 + 2e12, cfg.pump(), dm) < 0.0);
  const JsfGrid jsf = cfg.build();  // interferes with the sampled phase
  CHECK(jsf.normalized);
}

TEST_CASE("strict mode escalates warnings") {
  const auto dir = temp_dir("jsfkit_strict_test");
  const auto cfg_path = dir / "w.cfg";
  // narrow window forces a truncation diagnostic
  std::ofstream(cfg_path) << "scenario = simple\nsimple.a_sigma = 1.2\nsimple.b_sigma = 1.8\n"
                          << "grid.n = 64\ngrid.span_sigma = 4.5\nout.prefix = w\n";
  RunOptions opt;
  opt.config_path = cfg_path.string();
  opt.out_dir = (dir / "out").string();
  CHECK(run_subcommand("jsf", opt) == 0);
  opt.strict = true;
  opt.out_dir = (dir / "out_strict").string();
  CHECK(run_subcommand("jsf", opt) == 3);
}
