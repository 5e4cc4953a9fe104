#include "jsfkit/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "jsfkit/schmidt.hpp"
#include "jsfkit/units.hpp"

namespace jsfkit {

double FilterSpec::f_s(double w) const {
  if (!signal_active()) return 1.0;
  if (shape == FilterShape::Rect)
    return std::abs(w - center_s) <= width_s / 2.0 ? 1.0 : 0.0;
  const double d = (w - center_s) / width_s;
  return std::exp(-0.5 * d * d);
}

double FilterSpec::f_i(double w) const {
  if (!idler_active()) return 1.0;
  if (shape == FilterShape::Rect)
    return std::abs(w - center_i) <= width_i / 2.0 ? 1.0 : 0.0;
  const double d = (w - center_i) / width_i;
  return std::exp(-0.5 * d * d);
}

void FilterSpec::validate() const {
  if (width_s < 0 || width_i < 0) throw std::invalid_argument("filter: widths must be >= 0");
  if (eta_s < 0 || eta_s > 1 || eta_i < 0 || eta_i > 1)
    throw std::invalid_argument("filter: efficiencies must lie in [0,1]");
}

namespace {

struct FilterSamples {
  std::vector<double> fs, fi;    // amplitude transmissivity per axis sample
  std::size_t s0, s1, i0, i1;    // half-open index ranges where f > 0
};

FilterSamples sample_filters(const SpectralGrid& g, const FilterSpec& filt) {
  FilterSamples out;
  out.fs.resize(g.n_s());
  out.fi.resize(g.n_i());
  for (std::size_t s = 0; s < g.n_s(); ++s) out.fs[s] = filt.f_s(g.omega_s[s]);
  for (std::size_t i = 0; i < g.n_i(); ++i) out.fi[i] = filt.f_i(g.omega_i[i]);
  auto active = [](const std::vector<double>& f, std::size_t& lo, std::size_t& hi) {
    lo = f.size();
    hi = 0;
    for (std::size_t k = 0; k < f.size(); ++k)
      if (f[k] > 0) {
        lo = std::min(lo, k);
        hi = std::max(hi, k + 1);
      }
  };
  active(out.fs, out.s0, out.s1);
  active(out.fi, out.i0, out.i1);
  return out;
}

// raw integrals (no eta, no G): ps, pi, pc and the rejected-signal share
struct RawMasses {
  double ps = 0, pi = 0, pc = 0, rejected = 0;
};

RawMasses raw_masses(const JsfGrid& jsf, const FilterSamples& f) {
  const auto& g = jsf.grid;
  const double cell = g.cell();
  RawMasses m;
  std::vector<double> abs2(g.n_i());
  for (std::size_t s = 0; s < g.n_s(); ++s) {
    kern::vabs2(abs2.data(), jsf.values.row(s), g.n_i());
    double row_all = 0, row_fi = 0;
    for (std::size_t i = 0; i < g.n_i(); ++i) {
      row_all += abs2[i];
      row_fi += abs2[i] * f.fi[i] * f.fi[i];
    }
    const double fs2 = f.fs[s] * f.fs[s];
    m.ps += fs2 * row_all;
    m.pi += row_fi;
    m.pc += fs2 * row_fi;
    m.rejected += (1.0 - fs2) * row_fi;
  }
  m.ps *= cell;
  m.pi *= cell;
  m.pc *= cell;
  m.rejected *= cell;
  return m;
}

// weighted array with one or both filters applied, cropped to the given row
// range (columns cropped only when `both`)
CMat filtered_weighted(const JsfGrid& jsf, const FilterSamples& f, bool both,
                       std::size_t r0, std::size_t r1) {
  const auto& g = jsf.grid;
  const double wq = std::sqrt(g.cell());
  const std::size_t c0 = both ? f.i0 : 0;
  const std::size_t c1 = both ? f.i1 : g.n_i();
  CMat out(r1 - r0, c1 - c0);
  for (std::size_t s = r0; s < r1; ++s) {
    const cplx* src = jsf.values.row(s);
    cplx* dst = out.row(s - r0);
    for (std::size_t i = c0; i < c1; ++i)
      dst[i - c0] = src[i] * (wq * f.fs[s] * (both ? f.fi[i] : 1.0));
  }
  return out;
}

// idler-side-only filtered weighted array (rows all, columns cropped)
CMat filtered_weighted_idler(const JsfGrid& jsf, const FilterSamples& f) {
  const auto& g = jsf.grid;
  const double wq = std::sqrt(g.cell());
  CMat out(g.n_s(), f.i1 - f.i0);
  for (std::size_t s = 0; s < g.n_s(); ++s) {
    const cplx* src = jsf.values.row(s);
    cplx* dst = out.row(s);
    for (std::size_t i = f.i0; i < f.i1; ++i) dst[i - f.i0] = src[i] * (wq * f.fi[i]);
  }
  return out;
}

void require_normalized(const JsfGrid& jsf) {
  if (!jsf.normalized) throw std::invalid_argument("metrics: JSF must be normalized");
}

}  // namespace

FilterApplication apply_filters(const JsfGrid& jsf, const FilterSpec& filt) {
  require_normalized(jsf);
  filt.validate();
  const auto f = sample_filters(jsf.grid, filt);
  FilterApplication out;
  out.filtered.grid = jsf.grid;
  out.filtered.normalized = false;
  out.filtered.values = CMat(jsf.grid.n_s(), jsf.grid.n_i());
  for (std::size_t s = 0; s < jsf.grid.n_s(); ++s) {
    const cplx* src = jsf.values.row(s);
    cplx* dst = out.filtered.values.row(s);
    for (std::size_t i = 0; i < jsf.grid.n_i(); ++i) dst[i] = src[i] * (f.fs[s] * f.fi[i]);
  }
  out.transmitted_mass = out.filtered.total_mass();
  out.zero_mass = !(out.transmitted_mass > 0);
  if (out.zero_mass)
    out.filtered.diagnostics.push_back(
        {"zero-transmission", "filter passbands transmit no probability mass on the grid"});
  return out;
}

PairProbabilities singles_and_coincidences(const JsfGrid& jsf, const FilterSpec& filt,
                                           double G) {
  require_normalized(jsf);
  filt.validate();
  if (!(G > 0)) throw std::invalid_argument("metrics: G must be > 0");
  const auto f = sample_filters(jsf.grid, filt);
  const auto m = raw_masses(jsf, f);
  PairProbabilities p;
  p.P_s = filt.eta_s * G * G * m.ps;
  p.P_i = filt.eta_i * G * G * m.pi;
  p.P_c = filt.eta_s * filt.eta_i * G * G * m.pc;
  if (p.P_s > 1.0 || p.P_i > 1.0 || p.P_c > 1.0)
    p.diagnostics.push_back(
        {"gain-validity", "per-pulse probability exceeds 1; two-photon approximation broken"});
  return p;
}

Efficiencies collection_and_heralding(const JsfGrid& jsf, const FilterSpec& filt) {
  require_normalized(jsf);
  filt.validate();
  const auto f = sample_filters(jsf.grid, filt);
  const auto m = raw_masses(jsf, f);
  Efficiencies e;
  if (m.pi > 0) {
    e.xi_s = filt.eta_s * m.pc / m.pi;
    e.h_s = m.pc / m.pi;
  }
  if (m.ps > 0) {
    e.xi_i = filt.eta_i * m.pc / m.ps;
    e.h_i = m.pc / m.ps;
  }
  return e;
}

FilteredPurity filtered_heralded_purity(const JsfGrid& jsf, const FilterSpec& filt) {
  require_normalized(jsf);
  filt.validate();
  const auto f = sample_filters(jsf.grid, filt);
  const auto m = raw_masses(jsf, f);
  FilteredPurity out;
  if (!(m.pi > 0)) return out;
  out.T = m.pc / m.pi;
  out.R = m.rejected / m.pi;
  if (!(m.pc > 0)) return out;
  CMat P = filtered_weighted(jsf, f, true, f.s0, f.s1);
  const double p2 = P.frobenius_sq();
  const double r4 = sum_r4_gram(P) / (p2 * p2);
  out.sum_r4 = r4;
  out.purity = (*out.T) * (*out.T) * r4 + (*out.R) * (*out.R);
  return out;
}

std::optional<double> g2_one_side_filtered(const JsfGrid& jsf, const FilterSpec& filt,
                                           Axis side) {
  require_normalized(jsf);
  filt.validate();
  const auto f = sample_filters(jsf.grid, filt);
  CMat Q;
  if (side == Axis::Signal) {
    if (f.s0 >= f.s1) return std::nullopt;
    Q = filtered_weighted(jsf, f, false, f.s0, f.s1);
  } else {
    if (f.i0 >= f.i1) return std::nullopt;
    Q = filtered_weighted_idler(jsf, f);
  }
  const double mass = Q.frobenius_sq();
  if (!(mass > 0)) return std::nullopt;
  return 1.0 + sum_r4_gram(Q) / (mass * mass);
}

std::optional<double> heralded_auto_g2(const JsfGrid& jsf, const FilterSpec& filt, double G) {
  require_normalized(jsf);
  filt.validate();
  if (!(G > 0)) throw std::invalid_argument("metrics: G must be > 0");
  const auto f = sample_filters(jsf.grid, filt);
  const auto m = raw_masses(jsf, f);
  if (!(m.pi > 0) || !(m.ps > 0) || !(m.pc > 0)) return std::nullopt;
  const double h_s = m.pc / m.pi;
  const double h_i = m.pc / m.ps;

  CMat P = filtered_weighted(jsf, f, true, f.s0, f.s1);   // f_s f_i F
  CMat Q = filtered_weighted(jsf, f, false, f.s0, f.s1);  // f_s F, same row range
  CMat X = matmul_adjB(P, P);
  CMat Y = matmul_adjB(Q, Q);
  const double ebar = kern::dotc(Y.data(), X.data(), X.size()).real();
  const double abar = m.pc * m.ps;
  const double Pc = G * G * m.pc;  // eta = 1 here
  return 2.0 * Pc / (h_s * h_i) * (1.0 + ebar / abar);
}

MetricsReport compute_metrics(const JsfGrid& jsf, const FilterSpec& filt, double G) {
  MetricsReport r;
  r.gain_G = G;
  auto p = singles_and_coincidences(jsf, filt, G);
  r.P_s = p.P_s;
  r.P_i = p.P_i;
  r.P_c = p.P_c;
  r.diagnostics = std::move(p.diagnostics);
  auto e = collection_and_heralding(jsf, filt);
  r.xi_s = e.xi_s;
  r.xi_i = e.xi_i;
  r.h_s = e.h_s;
  r.h_i = e.h_i;
  auto fp = filtered_heralded_purity(jsf, filt);
  r.T = fp.T;
  r.R = fp.R;
  r.purity_filtered = fp.purity;
  r.g2_bar_s = g2_one_side_filtered(jsf, filt, Axis::Signal);
  r.g2_bar_i = g2_one_side_filtered(jsf, filt, Axis::Idler);
  r.heralded_g2 = heralded_auto_g2(jsf, filt, G);
  for (const auto& d : jsf.diagnostics) r.diagnostics.push_back(d);
  return r;
}

std::vector<ScanRow> bandwidth_scan(const JsfGrid& jsf, double center_s, double center_i,
                                    double dlam_lo_nm, double dlam_hi_nm,
                                    std::size_t points) {
  if (points < 1 || !(dlam_hi_nm >= dlam_lo_nm))
    throw std::invalid_argument("scan: invalid bandwidth range");
  std::vector<ScanRow> rows;
  rows.reserve(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double dlam =
        points == 1 ? dlam_lo_nm
                    : dlam_lo_nm + (dlam_hi_nm - dlam_lo_nm) * static_cast<double>(k) /
                          static_cast<double>(points - 1);
    FilterSpec filt = FilterSpec::island_pair(center_s, center_i,
                                              units::filter_width_from_dlambda_nm(dlam));
    ScanRow row;
    row.dlambda_f_nm = dlam;
    row.g2s = g2_one_side_filtered(jsf, filt, Axis::Signal);
    row.g2i = g2_one_side_filtered(jsf, filt, Axis::Idler);
    auto e = collection_and_heralding(jsf, filt);
    row.xi_s = e.xi_s;
    row.xi_i = e.xi_i;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace jsfkit
