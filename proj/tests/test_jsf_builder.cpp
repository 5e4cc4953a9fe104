#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "jsfkit/jsf.hpp"
#include "jsfkit/schmidt.hpp"

using namespace jsfkit;
using namespace fixtures;

namespace {

double rel_diff(const CMat& a, const CMat& b) {
  double num = 0, den = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += std::norm(a.a[k] - b.a[k]);
    den += std::norm(b.a[k]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("interference factors") {
  // |H| = N at theta = m pi, including the limit branch
  for (int N : {2, 3, 5}) {
    for (int m : {-2, 0, 1, 3}) {
      CHECK(std::abs(interference_H(m * units::pi, N)) == doctest::Approx(N).epsilon(1e-12));
      CHECK(std::abs(interference_H(m * units::pi + 5e-9, N)) ==
            doctest::Approx(N).epsilon(1e-9));
    }
    // closed form equals the finite geometric sum everywhere
    std::vector<double> equal_lengths(static_cast<std::size_t>(N), 1.0);
    for (double theta = -7.0; theta <= 7.0; theta += 0.0371) {
      const cplx direct = interference_K(theta, equal_lengths);
      const cplx closed = interference_H(theta, N);
      CHECK(std::abs(direct - closed) < 1e-10 * (1.0 + std::abs(closed)));
      CHECK(std::abs(closed) <= N + 1e-12);
    }
  }
  // |K| bounded by the total length
  const std::vector<double> lens{50.0, 100.0, 50.0};
  for (double theta = -4.0; theta <= 4.0; theta += 0.0317)
    CHECK(std::abs(interference_K(theta, lens)) <= 200.0 + 1e-9);
}

TEST_CASE("sinc limit branch") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-9) == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(sinc(units::pi) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(sinc(1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
}

TEST_CASE("every built grid is normalized") {
  auto jsf = fig1_jsf(128);
  CHECK(jsf.normalized);
  CHECK(jsf.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
  auto nli = two_stage(128);
  CHECK(nli.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("narrow grid raises a truncation diagnostic") {
  const PumpSpec p = pump_1550();
  SimpleJsfParams params{1.2, 1.8, 0.0};
  // spans the pump direction but clips the slow sinc tails
  auto jsf = build_simple_jsf(params, p,
                              SpectralGrid::detuning_window(p.omega_p0(), 4.5 * p.sigma_p, 96));
  bool flagged = false;
  for (const auto& d : jsf.diagnostics) flagged |= d.code == "grid-truncation";
  CHECK(flagged);
  // and a grid violating the pump-span precondition is rejected outright
  CHECK_THROWS_AS(build_simple_jsf(params, p,
                                   SpectralGrid::detuning_window(p.omega_p0(), 1.5 * p.sigma_p, 96)),
                  std::invalid_argument);
}

TEST_CASE("single-stage design equals the single-fiber builder") {
  NliDesign d;
  d.stage_lengths = {100.0};
  const auto grid = band_grid(96);
  const auto a = build_nli_jsf(d, pump_1550(), dsf(100.0), grid);
  const auto b = build_single_fiber_jsf(pump_1550(), dsf(100.0), grid);
  CHECK(rel_diff(a.values, b.values) < 1e-13);
}

TEST_CASE("design validation") {
  NliDesign d;
  d.stage_lengths = {50.0};
  d.dm = smf(7.0);
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);  // single stage with a DM
  d.stage_lengths = {50.0, 50.0};
  d.dm.reset();
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);  // multi stage without a DM
  d.dm = smf(7.0);
  CHECK_NOTHROW(d.validate());
  d.stage_lengths = {50.0, -1.0};
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("even-stage composition collapses to the H and K formulas") {
  const PumpSpec p = pump_1550();
  const FiberSpec f = dsf(50.0);
  const auto dm = smf(7.0);
  const auto grid = band_grid(96);

  for (int N : {2, 3}) {
    NliDesign d;
    d.stage_lengths.assign(static_cast<std::size_t>(N), 50.0);
    d.dm = dm;

    // with sinc: pump * L sinc(dkL/2) e^{j dkL/2} * H(dphi/2)
    auto built = build_nli_jsf(d, p, f, grid);
    CMat ref(grid.n_s(), grid.n_i());
    for (std::size_t s = 0; s < grid.n_s(); ++s)
      for (std::size_t i = 0; i < grid.n_i(); ++i) {
        const double ws = grid.omega_s[s], wi = grid.omega_i[i];
        const double dk = delta_k_dsf(ws, wi, p, f);
        const double theta = 0.5 * delta_phi_dm(ws, wi, p, *d.dm);
        ref(s, i) = pump_envelope(p, ws, wi) * (50.0 * phase_match_factor(dk, 50.0)) *
                    interference_H(theta, N);
      }
    const double nrm = std::sqrt(kern::sum_abs2(ref.data(), ref.size()) * grid.cell());
    kern::vscale(ref.data(), 1.0 / nrm, ref.size());
    CHECK(rel_diff(built.values, ref) < 1e-12);

    // without sinc: pump * K(theta) with equal weights
    d.include_sinc = false;
    auto built2 = build_nli_jsf(d, p, f, grid);
    CMat ref2(grid.n_s(), grid.n_i());
    const std::vector<double> lens(static_cast<std::size_t>(N), 50.0);
    for (std::size_t s = 0; s < grid.n_s(); ++s)
      for (std::size_t i = 0; i < grid.n_i(); ++i) {
        const double ws = grid.omega_s[s], wi = grid.omega_i[i];
        const double theta = 0.5 * delta_phi_dm(ws, wi, p, *d.dm);
        ref2(s, i) = pump_envelope(p, ws, wi) * interference_K(theta, lens);
      }
    const double nrm2 = std::sqrt(kern::sum_abs2(ref2.data(), ref2.size()) * grid.cell());
    kern::vscale(ref2.data(), 1.0 / nrm2, ref2.size());
    CHECK(rel_diff(built2.values, ref2) < 1e-12);
  }
}

TEST_CASE("uneven design without sinc warns outside the near-phase-matched regime") {
  NliDesign d;
  d.stage_lengths = {5000.0, 10000.0, 5000.0};  // km-scale stages break |dk L| << 1
  d.dm = smf(11.0);
  auto jsf = build_nli_jsf(d, pump_1550(), dsf(5000.0), band_grid(96));
  bool flagged = false;
  for (const auto& diag : jsf.diagnostics) flagged |= diag.code == "near-phase-match";
  CHECK(flagged);
}

TEST_CASE("marginal of a factorized JSF is the single-photon spectrum") {
  auto jsf = separable_gaussian(96);
  const auto ms = marginal_intensity(jsf, Axis::Signal);
  const auto mi = marginal_intensity(jsf, Axis::Idler);
  // integrates to one
  double tot_s = 0, tot_i = 0;
  for (double v : ms.density) tot_s += v * jsf.grid.d_omega_s;
  for (double v : mi.density) tot_i += v * jsf.grid.d_omega_i;
  CHECK(tot_s == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(tot_i == doctest::Approx(1.0).epsilon(1e-10));
  // equals |psi|^2 of the signal factor
  const double wp0 = pump_1550().omega_p0(), sg = pump_1550().sigma_p;
  double psi_norm = 0;
  for (double w : jsf.grid.omega_s) {
    const double x = (w - wp0) / sg;
    psi_norm += std::exp(-x * x) * jsf.grid.d_omega_s;
  }
  for (std::size_t s = 0; s < ms.omega.size(); s += 7) {
    const double x = (ms.omega[s] - wp0) / sg;
    CHECK(ms.density[s] == doctest::Approx(std::exp(-x * x) / psi_norm).epsilon(1e-8));
  }
}

TEST_CASE("two-stage fringe visibility decreases with island index") {
  auto jsf = two_stage(512);
  const auto ms = marginal_intensity(jsf, Axis::Signal);
  const PumpSpec p = pump_1550();
  const auto dm = smf(7.0);
  const double k2L = dm.k2_dm(p) * dm.length_Ldm;
  const double wp0 = p.omega_p0();
  auto density_at = [&](double w) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < ms.omega.size(); ++k)
      if (std::abs(ms.omega[k] - w) < std::abs(ms.omega[best] - w)) best = k;
    return ms.density[best];
  };
  std::vector<double> vis;
  for (int m = 1; m <= 3; ++m) {
    const double peak = density_at(wp0 - std::sqrt(8.0 * m * units::pi / k2L) / 2.0);
    const double valley = density_at(wp0 - std::sqrt(8.0 * (m + 0.5) * units::pi / k2L) / 2.0);
    vis.push_back((peak - valley) / (peak + valley));
  }
  CHECK(vis[0] > vis[1]);
  CHECK(vis[1] > vis[2]);
}

TEST_CASE("island windows: analytic centers, refinement, bounds") {
  auto jsf = two_stage(512);
  const PumpSpec p = pump_1550();
  const auto dm = smf(7.0);
  const FiberSpec f = dsf(50.0);

  const auto w1 = island_window(jsf, 1, dm, p, f);
  CHECK(units::lambda_from_omega(w1.omega_s_analytic) * 1e9 ==
        doctest::Approx(1556.74).epsilon(2e-5));
  CHECK(units::lambda_from_omega(w1.omega_i_analytic) * 1e9 ==
        doctest::Approx(1540.34).epsilon(2e-5));
  // refined grid maximum within 0.1 nm of the analytic predictor
  CHECK(std::abs(units::lambda_from_omega(w1.omega_s_center) -
                 units::lambda_from_omega(w1.omega_s_analytic)) < 0.1e-9);

  // center spacing scales as sqrt(m)
  const auto w2 = island_window(jsf, 2, dm, p, f);
  const double d1 = w1.omega_i_analytic - w1.omega_s_analytic;
  const double d2 = w2.omega_i_analytic - w2.omega_s_analytic;
  CHECK(d2 / d1 == doctest::Approx(std::sqrt(2.0)).epsilon(5e-3));

  // m = 0 island: centers at the phase-matching point
  const auto w0 = island_window(jsf, 0, dm, p, f);
  CHECK(w0.omega_s_analytic == doctest::Approx(p.omega_p0()));

  // valley bounds at the adjacent interference zeros
  const double k2L = dm.k2_dm(p) * dm.length_Ldm;
  CHECK(w1.detuning_lo == doctest::Approx(std::sqrt(8.0 * 0.5 * units::pi / k2L)));
  CHECK(w1.detuning_hi == doctest::Approx(std::sqrt(8.0 * 1.5 * units::pi / k2L)));

  // far island beyond the 1528-1568 nm window
  CHECK_THROWS_AS(island_window(jsf, 12, dm, p, f), std::out_of_range);
}

TEST_CASE("uneven binomial design removes secondary maxima") {
  NliDesign uneven;
  uneven.stage_lengths = {50.0, 100.0, 50.0};
  uneven.dm = smf(11.0);
  const auto ju = build_nli_jsf(uneven, pump_1550(), dsf(50.0), band_grid(512));

  NliDesign even;
  even.stage_lengths = {50.0, 50.0, 50.0};
  even.dm = smf(11.0);
  const auto je = build_nli_jsf(even, pump_1550(), dsf(50.0), band_grid(512));

  // walk grid rows along the anti-diagonal between the m=1 and m=2 islands
  const PumpSpec p = pump_1550();
  const double wp0 = p.omega_p0();
  const double k2L = smf(11.0).k2_dm(p) * 11.0;
  const double d1 = std::sqrt(8.0 * units::pi / k2L);
  const double d2 = std::sqrt(16.0 * units::pi / k2L);
  auto antidiag_cell = [&](const JsfGrid& j, double d) {
    const auto& g = j.grid;
    const auto si =
        static_cast<std::size_t>(std::lround((wp0 - d / 2 - g.omega_s.front()) / g.d_omega_s));
    const auto ii =
        static_cast<std::size_t>(std::lround((wp0 + d / 2 - g.omega_i.front()) / g.d_omega_i));
    return std::norm(j.values(si, ii));
  };
  auto worst_secondary = [&](const JsfGrid& j, double peak) {
    // one sample per distinct signal row inside the inter-island valley
    std::vector<double> prof;
    const auto& g = j.grid;
    for (std::size_t s = 0; s < g.n_s(); ++s) {
      const double d = 2.0 * (wp0 - g.omega_s[s]);
      if (d > d1 * 1.02 && d < d2 * 0.98) prof.push_back(antidiag_cell(j, d));
    }
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < prof.size(); ++k)
      if (prof[k] > prof[k - 1] && prof[k] > prof[k + 1]) worst = std::max(worst, prof[k] / peak);
    return worst;  // interior local maxima relative to the principal peak
  };
  const double peak_u = antidiag_cell(ju, d1);
  const double peak_e = antidiag_cell(je, d1);
  CHECK(worst_secondary(ju, peak_u) < 0.01);  // binomial lengths: no secondary maxima
  CHECK(worst_secondary(je, peak_e) > 0.05);  // even lengths: ~11% secondary island

  // deeper fringe minima in the signal marginal for the uneven design
  auto min_between = [&](const JsfGrid& j) {
    const auto ms = marginal_intensity(j, Axis::Signal);
    double lo = 1e300;
    for (std::size_t k = 0; k < ms.omega.size(); ++k) {
      const double d = 2.0 * (wp0 - ms.omega[k]);
      if (d > d1 * 1.05 && d < d2 * 0.95) lo = std::min(lo, ms.density[k]);
    }
    return lo;
  };
  CHECK(min_between(ju) < min_between(je));
}
