#pragma once

#include "diqsdc/analytics.hpp"
#include "diqsdc/errors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diqsdc::cli {

struct SweepSpecError : ConfigError {
  using ConfigError::ConfigError;
};

struct GridRange {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;
};

struct Grid {
  GridRange d;
  GridRange p;
};

/// "d0:d1:step,p0:p1:step" with positive steps and lo <= hi.
Grid parse_grid(const std::string& spec);
std::vector<double> expand(const GridRange& r);

/// 12 significant digits, "." decimal separator.
std::string format_number(double v);
/// log10 of a clamped-zero efficiency; "-inf" when v <= 0.
std::string format_log10(double v);

/// Emits the CSV table for one of {fig2, fig3, fig7, custom}. The custom
/// sweep requires a grid; named sweeps ignore it.
std::string run_sweep(const std::string& sweep, const std::optional<Grid>& grid, Variant variant);

}  // namespace diqsdc::cli
