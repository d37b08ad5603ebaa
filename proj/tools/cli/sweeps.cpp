#include "cli/sweeps.hpp"

#include "diqsdc/channel.hpp"
#include "diqsdc/epp.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace diqsdc::cli {

namespace {

constexpr const char* kHeader = "d_km,p,variant,q1,s1,q2,s2,e_c,k_qkd,r_loss,r_error";

double eta_at(double d_km) {
  return transmission_efficiency(ChannelParams{.distance_km = d_km});
}

struct Row {
  double d_km, p;
  Variant variant;
  double e_c;
  std::optional<double> lg_e_c2;
};

void emit_row(std::ostringstream& out, const Row& r) {
  const double eta = eta_at(r.d_km);
  const TheoryPoint t = theory_point(eta, r.p);
  const LossErrorRates rates = loss_error_rates(eta, r.p, r.variant);
  out << format_number(r.d_km) << ',' << format_number(r.p) << ','
      << (r.variant == Variant::Original ? "original" : "modified") << ','
      << format_number(t.q1) << ',' << format_number(t.s1) << ',' << format_number(t.q2) << ','
      << format_number(t.s2) << ',' << format_number(r.e_c) << ','
      << format_number(di_qkd_rate(eta, r.p)) << ',' << format_number(rates.r_loss) << ','
      << format_number(rates.r_error);
  if (r.lg_e_c2) out << ',' << format_log10(*r.lg_e_c2);
  out << '\n';
}

double modified_efficiency_or_zero(double eta, double p) {
  try {
    return efficiency_modified(eta, p, plan_epp(p));
  } catch (const EppIneffectiveError&) {
    return 0.0;
  } catch (const TargetUnreachableError&) {
    return 0.0;
  }
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw SweepSpecError("malformed grid number: " + s);
  }
  if (used != s.size()) throw SweepSpecError("malformed grid number: " + s);
  return v;
}

GridRange parse_range(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos || spec.find(':', c2 + 1) != std::string::npos)
    throw SweepSpecError("grid range must be lo:hi:step, got " + spec);
  GridRange r{parse_double(spec.substr(0, c1)), parse_double(spec.substr(c1 + 1, c2 - c1 - 1)),
              parse_double(spec.substr(c2 + 1))};
  if (r.step <= 0.0) throw SweepSpecError("grid step must be positive");
  if (r.lo > r.hi) throw SweepSpecError("grid range is empty");
  return r;
}

}  // namespace

Grid parse_grid(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos || spec.find(',', comma + 1) != std::string::npos)
    throw SweepSpecError("grid must be d0:d1:step,p0:p1:step");
  return {parse_range(spec.substr(0, comma)), parse_range(spec.substr(comma + 1))};
}

std::vector<double> expand(const GridRange& r) {
  std::vector<double> values;
  for (std::size_t i = 0;; ++i) {
    const double v = r.lo + r.step * static_cast<double>(i);
    if (v > r.hi + 1e-9 * std::max(1.0, std::abs(r.hi))) break;
    values.push_back(std::min(v, r.hi));
  }
  return values;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_log10(double v) {
  if (v <= 0.0) return "-inf";
  return format_number(std::log10(v));
}

std::string run_sweep(const std::string& sweep, const std::optional<Grid>& grid, Variant variant) {
  std::ostringstream out;
  out << kHeader;

  if (sweep == "fig2") {
    // Maximal distance of the unamplified protocol versus channel quality.
    out << '\n';
    for (int i = 0; i <= 74; ++i) {
      const double p = 0.926 + 0.001 * i;
      const double d = max_distance(p, Variant::Original);
      emit_row(out, {d, p, Variant::Original, efficiency_original(eta_at(d), p), std::nullopt});
    }
  } else if (sweep == "fig3") {
    out << '\n';
    for (double p : {1.0, 0.99, 0.98}) {
      for (int i = 0; i <= 80; ++i) {
        const double d = 0.05 * i;
        emit_row(out, {d, p, Variant::Original, efficiency_original(eta_at(d), p), std::nullopt});
      }
    }
  } else if (sweep == "fig7") {
    out << ",lg_e_c2\n";
    for (double p : {1.0, 0.98, 0.94, 0.90, 0.86}) {
      for (int i = 0; i <= 40; ++i) {
        const double d = 5.0 * i;
        const double e_c = modified_efficiency_or_zero(eta_at(d), p);
        emit_row(out, {d, p, Variant::Modified, e_c, e_c});
      }
    }
  } else if (sweep == "custom") {
    if (!grid) throw SweepSpecError("custom sweep requires --grid");
    out << '\n';
    for (double p : expand(grid->p)) {
      for (double d : expand(grid->d)) {
        const double e_c = variant == Variant::Original
                               ? efficiency_original(eta_at(d), p)
                               : modified_efficiency_or_zero(eta_at(d), p);
        emit_row(out, {d, p, variant, e_c, std::nullopt});
      }
    }
  } else {
    throw SweepSpecError("unknown sweep: " + sweep);
  }
  return out.str();
}

}  // namespace diqsdc::cli
