#include <cstdio>
#include <exception>

#include "CLI11.hpp"
#include "jsfkit/io.hpp"
#include "jsfkit/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"joint spectral function engineering toolkit for pulse-pumped "
               "nonlinear interferometers"};
  app.set_version_flag("--version", jsfkit::io::kToolVersion);
  app.require_subcommand(1);

  jsfkit::RunOptions opt;
  std::size_t grid_n = 0;

  auto add = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("config", opt.config_path, "scenario config file")->required();
    sub->add_option("--out", opt.out_dir, "output directory (default .)");
    sub->add_option("--grid", grid_n, "override grid.n");
    sub->add_option("--format", opt.format, "grid export format: csv | bin");
    sub->add_flag("--strict", opt.strict, "escalate numerical warnings to exit code 3");
    return sub;
  };

  add("jsf", "build the JSF grid and marginal distributions");
  add("schmidt", "Schmidt decomposition: coefficients, K, g2, purity, mode dumps");
  add("metrics", "filtered pair metrics: probabilities, efficiencies, purity, g2");
  add("highgain", "high-gain Green functions and gain-dependent mode indices");
  add("scan", "parameter sweeps: filter_bandwidth | gain | stage_count");
  add("design", "closed-form design calculators");

  CLI11_PARSE(app, argc, argv);
  if (grid_n > 0) opt.grid_n = grid_n;

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return jsfkit::run_subcommand(cmd, opt);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
