#include "diqsdc/analytics.hpp"

#include "diqsdc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace diqsdc {

namespace {

constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;
// Far tighter than the 1e-4 km contract so the bracket residual at the
// returned root is negligible.
constexpr double kBisectionTolKm = 1e-10;
constexpr double kMaxBracketKm = 500.0;

double eta_at(double d_km, double alpha) { return std::pow(10.0, -alpha * d_km / 10.0); }

// Efficiency bracket terms, before the success-probability prefactors.
double bracket_original(double eta, double p) {
  const TheoryPoint t = theory_point(eta, p);
  return 1.0 - binary_entropy(t.q2) - chi_or_unbounded(t.s2);
}

double bracket_modified(double p) {
  const TheoryPoint t = theory_point(1.0, p);
  return 1.0 - binary_entropy(t.q2p) - chi_or_unbounded(t.s2p);
}

double bracket_di_qkd(double eta, double p) {
  const TheoryPoint t = theory_point(eta, p);
  return 1.0 - binary_entropy(t.q1) - chi_or_unbounded(t.s1);
}

// Root of f (decreasing in d) in [0, kMaxBracketKm]; 0 if f(0) <= 0,
// +inf if f never crosses.
template <typename F>
double distance_root(F f) {
  if (f(0.0) <= 0.0) return 0.0;
  if (f(kMaxBracketKm) > 0.0) return std::numeric_limits<double>::infinity();
  double lo = 0.0, hi = kMaxBracketKm;
  while (hi - lo > kBisectionTolKm) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

template <typename F>
double p_root(F f) {
  double lo = 0.5, hi = 1.0;
  if (f(hi) <= 0.0) return 1.0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw DomainError("binary entropy argument outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double chi_bound(double s) {
  if (s <= 2.0) throw NotViolatingError("CHSH value does not violate the classical bound");
  if (s > kTsirelson + 1e-12) throw DomainError("CHSH value above the Tsirelson bound");
  const double root = std::sqrt(std::max(0.0, (s / 2.0) * (s / 2.0) - 1.0));
  return binary_entropy(std::min(1.0, (1.0 + root) / 2.0));
}

double chi_or_unbounded(double s) { return s <= 2.0 ? 1.0 : chi_bound(s); }

TheoryPoint theory_point(double eta, double p) {
  if (eta < 0.0 || eta > 1.0 || p < 0.0 || p > 1.0)
    throw DomainError("eta and p must lie in [0,1]");
  TheoryPoint t;
  t.eta = eta;
  t.p = p;
  const double ep = eta * p;
  t.q1 = 0.5 * (1.0 - ep);
  t.s1 = kTsirelson * ep;
  t.q2 = 0.5 * (1.0 - ep * ep);
  t.s2 = kTsirelson * ep * ep;
  t.q2p = 0.5 * (1.0 - p);
  t.s2p = kTsirelson * p;
  return t;
}

double efficiency_original(double eta, double p) {
  return std::max(0.0, bracket_original(eta, p));
}

double efficiency_modified(double eta, double p, const EppSchedule& schedule) {
  double prod = 1.0;
  for (double ps : schedule.per_step_success) prod *= ps;
  const double overhead =
      std::pow(eta, 4) * prod / std::pow(2.0, static_cast<double>(schedule.k) + 2.0);
  return std::max(0.0, overhead * std::max(0.0, bracket_modified(p)));
}

LossErrorRates loss_error_rates(double eta, double p, Variant variant) {
  if (eta < 0.0 || eta > 1.0 || p < 0.0 || p > 1.0)
    throw DomainError("eta and p must lie in [0,1]");
  if (variant == Variant::Original) {
    return {1.0 - eta * eta, 0.75 * (1.0 - p * p)};
  }
  return {0.0, 0.75 * (1.0 - p)};
}

double max_distance(double p, Variant variant, double alpha) {
  if (variant == Variant::Modified) {
    // Amplification removes the distance dependence of the bracket.
    return bracket_modified(p) > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return distance_root([&](double d) { return bracket_original(eta_at(d, alpha), p); });
}

double threshold_p(Variant variant) {
  if (variant == Variant::Original) {
    return p_root([](double p) { return bracket_original(1.0, p); });
  }
  return p_root([](double p) { return bracket_modified(p); });
}

double di_qkd_rate(double eta, double p) { return std::max(0.0, bracket_di_qkd(eta, p)); }

double di_qkd_max_distance(double p, double alpha) {
  return distance_root([&](double d) { return bracket_di_qkd(eta_at(d, alpha), p); });
}

double interception_bound(double s1) { return chi_or_unbounded(s1); }

double throughput(double e_c, double rep_rate_hz, double reading_efficiency) {
  if (e_c < 0.0 || e_c > 1.0) throw DomainError("efficiency outside [0,1]");
  if (rep_rate_hz <= 0.0) throw DomainError("repetition rate must be positive");
  if (reading_efficiency != 0.5 && reading_efficiency != 1.0)
    throw DomainError("reading efficiency must be 0.5 or 1");
  return e_c * rep_rate_hz * reading_efficiency;
}

}  // namespace diqsdc
