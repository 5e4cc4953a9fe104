#include "jsfkit/jsf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jsfkit {

using units::pi;

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

cplx phase_match_factor(double dk, double length) {
  const double h = 0.5 * dk * length;
  return sinc(h) * cplx(std::cos(h), std::sin(h));
}

cplx pump_envelope(const PumpSpec& pump, double omega_s, double omega_i) {
  const double s = omega_s + omega_i - 2.0 * pump.omega_p0();
  const double q = s * s / (4.0 * pump.sigma_p * pump.sigma_p);
  return std::exp(cplx(-q, -q * pump.chirp_Cp));
}

cplx interference_H(double theta, int stages) {
  const double m = std::round(theta / pi);
  const double u = theta - m * pi;
  const double ph = (stages - 1) * theta;
  const cplx rot(std::cos(ph), std::sin(ph));
  if (std::abs(u) < 1e-8) {
    double sign = (static_cast<long long>(m) * (stages - 1)) % 2 == 0 ? 1.0 : -1.0;
    return static_cast<double>(stages) * sign * rot;
  }
  return std::sin(stages * theta) / std::sin(theta) * rot;
}

cplx interference_K(double theta, std::span<const double> lengths) {
  cplx sum = 0.0;
  for (std::size_t n = 0; n < lengths.size(); ++n) {
    const double ph = 2.0 * static_cast<double>(n) * theta;
    sum += lengths[n] * cplx(std::cos(ph), std::sin(ph));
  }
  return sum;
}

void SimpleJsfParams::validate() const {
  if (A_sigma == 0.0 || B_sigma == 0.0)
    throw std::invalid_argument("simple-jsf: A and B must be nonzero");
}

bool NliDesign::lengths_equal() const {
  for (double l : stage_lengths)
    if (l != stage_lengths.front()) return false;
  return true;
}

void NliDesign::validate() const {
  if (stage_lengths.empty()) throw std::invalid_argument("nli: need at least one stage");
  for (double l : stage_lengths)
    if (!(l > 0)) throw std::invalid_argument("nli: stage lengths must be > 0");
  if (stage_lengths.size() == 1 && dm.has_value())
    throw std::invalid_argument("nli: single-stage design must not carry a dispersive medium");
  if (stage_lengths.size() >= 2 && !dm.has_value())
    throw std::invalid_argument("nli: multi-stage design needs a dispersive medium");
  if (dm) dm->validate();
}

namespace {

// Mass in the outermost ring of cells relative to the total; a normalized JSF
// leaking more than 1e-4 there is flagged as truncated by the grid window.
void check_truncation(JsfGrid& jsf) {
  const std::size_t ns = jsf.grid.n_s(), ni = jsf.grid.n_i();
  double edge = 0.0;
  for (std::size_t i = 0; i < ni; ++i) {
    edge += std::norm(jsf.values(0, i));
    edge += std::norm(jsf.values(ns - 1, i));
  }
  for (std::size_t s = 1; s + 1 < ns; ++s) {
    edge += std::norm(jsf.values(s, 0));
    edge += std::norm(jsf.values(s, ni - 1));
  }
  edge *= jsf.grid.cell();
  if (edge > 1e-4)
    jsf.diagnostics.push_back(
        {"grid-truncation",
         "normalized boundary mass " + std::to_string(edge) + " exceeds 1e-4"});
}

template <typename CellFn>
JsfGrid build_on_grid(const SpectralGrid& grid, CellFn&& cell) {
  grid.validate();
  JsfGrid jsf;
  jsf.grid = grid;
  jsf.values = CMat(grid.n_s(), grid.n_i());
  struct Ctx {
    JsfGrid* jsf;
    const CellFn* fn;
  } ctx{&jsf, &cell};
  kern::parallel_rows(grid.n_s(), &ctx, [](void* p, std::size_t lo, std::size_t hi) {
    auto& c = *static_cast<Ctx*>(p);
    const auto& g = c.jsf->grid;
    for (std::size_t s = lo; s < hi; ++s) {
      cplx* row = c.jsf->values.row(s);
      const double ws = g.omega_s[s];
      for (std::size_t i = 0; i < g.n_i(); ++i) row[i] = (*c.fn)(ws, g.omega_i[i]);
    }
  });
  jsf.normalize();
  check_truncation(jsf);
  return jsf;
}

}  // namespace

JsfGrid build_simple_jsf(const SimpleJsfParams& params, const PumpSpec& pump,
                         const SpectralGrid& grid) {
  params.validate();
  pump.validate();
  const double wp0 = pump.omega_p0();
  const double span_sum = (grid.omega_s.back() + grid.omega_i.back() - 2.0 * wp0);
  if (span_sum < 4.0 * pump.sigma_p)
    throw std::invalid_argument("simple-jsf: grid must span +/-4 sigma_p along (W_s + W_i)");
  const double A = params.A_sigma * pump.sigma_p;
  const double B = params.B_sigma * pump.sigma_p;
  PumpSpec p = pump;
  p.chirp_Cp = params.chirp_Cp;
  return build_on_grid(grid, [&, A, B, wp0](double ws, double wi) {
    const double arg = (ws - wp0) / A + (wi - wp0) / B;
    return pump_envelope(p, ws, wi) * sinc(arg) * cplx(std::cos(arg), std::sin(arg));
  });
}

JsfGrid build_single_fiber_jsf(const PumpSpec& pump, const FiberSpec& fiber,
                               const SpectralGrid& grid) {
  pump.validate();
  fiber.validate();
  return build_on_grid(grid, [&](double ws, double wi) {
    return pump_envelope(pump, ws, wi) *
           phase_match_factor(delta_k_dsf(ws, wi, pump, fiber), fiber.length_L);
  });
}

JsfGrid build_nli_jsf(const NliDesign& design, const PumpSpec& pump,
                      const FiberSpec& fiber, const SpectralGrid& grid) {
  design.validate();
  pump.validate();
  fiber.validate();
  const bool with_sinc = design.sinc_enabled();
  const auto& lens = design.stage_lengths;

  JsfGrid jsf = build_on_grid(grid, [&](double ws, double wi) {
    const double dk = delta_k_dsf(ws, wi, pump, fiber);
    const double dphi = design.dm ? delta_phi_dm(ws, wi, pump, *design.dm) : 0.0;
    cplx sum = 0.0;
    double phase = 0.0;
    for (double L : lens) {
      cplx stage = with_sinc ? L * phase_match_factor(dk, L) : cplx(L, 0.0);
      sum += stage * cplx(std::cos(phase), std::sin(phase));
      phase += dphi + (design.include_dk_in_theta ? dk * L : 0.0);
    }
    return pump_envelope(pump, ws, wi) * sum;
  });

  if (!with_sinc) {
    // Dropping the sinc assumes |dk L_n / 2| << 1 over the window.
    const double lmax = *std::max_element(lens.begin(), lens.end());
    double worst = 0.0;
    for (double ws : {grid.omega_s.front(), grid.omega_s.back()})
      for (double wi : {grid.omega_i.front(), grid.omega_i.back()})
        worst = std::max(worst, std::abs(delta_k_dsf(ws, wi, pump, fiber)) * lmax / 2.0);
    if (worst > 0.5)
      jsf.diagnostics.push_back(
          {"near-phase-match",
           "max |dk L/2| = " + std::to_string(worst) + " on the window; sinc-free "
           "interference formula assumes |dk L/2| << 1"});
  }
  return jsf;
}

Marginal marginal_intensity(const JsfGrid& jsf, Axis axis) {
  if (!jsf.normalized) throw std::invalid_argument("marginal: JSF must be normalized");
  const auto& g = jsf.grid;
  Marginal m;
  if (axis == Axis::Signal) {
    m.omega = g.omega_s;
    m.density.assign(g.n_s(), 0.0);
    for (std::size_t s = 0; s < g.n_s(); ++s)
      m.density[s] = kern::sum_abs2(jsf.values.row(s), g.n_i()) * g.d_omega_i;
  } else {
    m.omega = g.omega_i;
    m.density.assign(g.n_i(), 0.0);
    for (std::size_t s = 0; s < g.n_s(); ++s) {
      const cplx* row = jsf.values.row(s);
      for (std::size_t i = 0; i < g.n_i(); ++i) m.density[i] += std::norm(row[i]) * g.d_omega_s;
    }
  }
  return m;
}

namespace {

// |F|^2 at (w_s, w_i) by bilinear interpolation
double abs2_interp(const JsfGrid& jsf, double ws, double wi) {
  const auto& g = jsf.grid;
  const double fs = (ws - g.omega_s.front()) / g.d_omega_s;
  const double fi = (wi - g.omega_i.front()) / g.d_omega_i;
  if (fs < 0 || fi < 0 || fs > static_cast<double>(g.n_s() - 1) ||
      fi > static_cast<double>(g.n_i() - 1))
    return 0.0;
  const std::size_t s0 = std::min(static_cast<std::size_t>(fs), g.n_s() - 2);
  const std::size_t i0 = std::min(static_cast<std::size_t>(fi), g.n_i() - 2);
  const double ts = fs - static_cast<double>(s0), ti = fi - static_cast<double>(i0);
  auto v = [&](std::size_t s, std::size_t i) { return std::norm(jsf.values(s, i)); };
  return (1 - ts) * ((1 - ti) * v(s0, i0) + ti * v(s0, i0 + 1)) +
         ts * ((1 - ti) * v(s0 + 1, i0) + ti * v(s0 + 1, i0 + 1));
}

}  // namespace

IslandWindow island_window(const JsfGrid& jsf, int m, const DispersiveMediumSpec& dm,
                           const PumpSpec& pump, const FiberSpec& fiber) {
  (void)fiber;
  if (dm.kind != DmKind::SmallDetuningQuadratic)
    throw std::invalid_argument("island_window: small-detuning medium required");
  if (m < 0) throw std::invalid_argument("island_window: m must be >= 0");
  const double k2L = dm.k2_dm(pump) * dm.length_Ldm;
  if (!(k2L > 0)) throw std::domain_error("island_window: k2_dm * L_dm must be > 0");
  const double wp0 = pump.omega_p0();

  IslandWindow w;
  w.m = m;
  const double d_m = m == 0 ? 0.0 : std::sqrt(8.0 * m * pi / k2L);
  w.omega_s_analytic = wp0 - d_m / 2.0;  // signal on the long-wavelength side
  w.omega_i_analytic = wp0 + d_m / 2.0;
  w.detuning_lo = m == 0 ? 0.0 : std::sqrt(8.0 * (m - 0.5) * pi / k2L);
  w.detuning_hi = std::sqrt(8.0 * (m + 0.5) * pi / k2L);

  const auto& g = jsf.grid;
  if (w.omega_s_analytic < g.omega_s.front() || w.omega_i_analytic > g.omega_i.back())
    throw std::out_of_range("island_window: island m outside the grid window");

  // local max of |F|^2 along the anti-diagonal w_s + w_i = 2 w_p0
  const std::size_t steps = 400;
  const double lo = m == 0 ? -w.detuning_hi : w.detuning_lo;
  const double hi = w.detuning_hi;
  double best_d = d_m, best_v = -1.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double d = lo + (hi - lo) * static_cast<double>(k) / steps;
    const double v = abs2_interp(jsf, wp0 - d / 2.0, wp0 + d / 2.0);
    if (v > best_v) {
      best_v = v;
      best_d = d;
    }
  }
  // parabolic refinement on the sampling comb
  const double h = (hi - lo) / steps;
  const double vm = abs2_interp(jsf, wp0 - (best_d - h) / 2.0, wp0 + (best_d - h) / 2.0);
  const double vp = abs2_interp(jsf, wp0 - (best_d + h) / 2.0, wp0 + (best_d + h) / 2.0);
  const double denom = vm - 2.0 * best_v + vp;
  if (std::abs(denom) > 0) best_d += 0.5 * h * (vm - vp) / denom;

  w.omega_s_center = wp0 - best_d / 2.0;
  w.omega_i_center = wp0 + best_d / 2.0;
  return w;
}

}  // namespace jsfkit
