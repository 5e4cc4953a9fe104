#pragma once

#include <limits>

#include "jsfkit/grid.hpp"

namespace jsfkit {

enum class FilterShape { Rect, Gauss };

// Rectangular passbands centered per side; width 0 (or +inf) means no filter
// on that side, f == 1. The Gaussian shape (amplitude e^{-(w-c)^2 / 2 width^2})
// exists for the two-side-vs-one-side g2 bound check only.
struct FilterSpec {
  double center_s = 0, center_i = 0;  // rad/s
  double width_s = 0, width_i = 0;    // rad/s, full passband width
  double eta_s = 1.0, eta_i = 1.0;    // detection efficiencies
  FilterShape shape = FilterShape::Rect;

  bool signal_active() const {
    return width_s > 0 && width_s != std::numeric_limits<double>::infinity();
  }
  bool idler_active() const {
    return width_i > 0 && width_i != std::numeric_limits<double>::infinity();
  }
  double f_s(double w) const;
  double f_i(double w) const;
  void validate() const;

  static FilterSpec island_pair(double center_s, double center_i, double common_width) {
    FilterSpec f;
    f.center_s = center_s;
    f.center_i = center_i;
    f.width_s = f.width_i = common_width;
    return f;
  }
};

struct FilterApplication {
  JsfGrid filtered;         // pointwise F f_s f_i, not renormalized
  double transmitted_mass;  // integral |F f_s f_i|^2 (the N_si^2 constant)
  bool zero_mass;
};

FilterApplication apply_filters(const JsfGrid& jsf, const FilterSpec& filt);

}  // namespace jsfkit
