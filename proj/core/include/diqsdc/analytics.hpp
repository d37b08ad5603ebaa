#pragma once

#include "diqsdc/epp.hpp"

namespace diqsdc {

enum class Variant { Original, Modified };

/// Closed-form CHSH values and QBERs for given channel efficiency and Werner
/// parameter: q1/s1 after round one, q2/s2 after round two, q2p/s2p for the
/// loss-compensated (modified) variant.
struct TheoryPoint {
  double eta = 1.0;
  double p = 1.0;
  double q1 = 0.0, s1 = 0.0;
  double q2 = 0.0, s2 = 0.0;
  double q2p = 0.0, s2p = 0.0;
};

/// h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0.
double binary_entropy(double x);

/// Interception-rate bound chi(S) = h((1 + sqrt((S/2)^2 - 1)) / 2) for
/// 2 < S <= 2*sqrt(2). Throws NotViolatingError for S <= 2 (the bound is
/// vacuous there) and DomainError above the Tsirelson bound.
double chi_bound(double s);

/// chi(S) for violating S, 1 otherwise (interception unbounded in the
/// classical regime; the protocol aborts there anyway).
double chi_or_unbounded(double s);

TheoryPoint theory_point(double eta, double p);

/// E_c1 = max(0, 1 - h(q2) - chi(s2)).
double efficiency_original(double eta, double p);

/// E_c2 = max(0, eta^4 * prod(per-step success) / 2^(k+2) * [1 - h(q2p) - chi(s2p)]).
double efficiency_modified(double eta, double p, const EppSchedule& schedule);

struct LossErrorRates {
  double r_loss = 0.0;
  double r_error = 0.0;
};

/// Original: (1 - eta^2, 3/4 (1 - p^2)).  Modified: (0, 3/4 (1 - p)).
LossErrorRates loss_error_rates(double eta, double p, Variant variant);

/// Distance at which the variant's efficiency bracket reaches zero
/// (bisection, 1e-4 km). Returns 0 below the p threshold. The modified
/// bracket does not depend on distance, so above threshold it returns +inf.
double max_distance(double p, Variant variant, double alpha = 0.2);

/// p at which the variant's zero-distance efficiency bracket vanishes.
double threshold_p(Variant variant);

/// Single-round reference: K = max(0, 1 - h(q1) - chi(s1)).
double di_qkd_rate(double eta, double p);

/// Zero-crossing distance of di_qkd_rate at fixed p (0 below threshold).
double di_qkd_max_distance(double p, double alpha = 0.2);

/// Eavesdropper information bound: chi(s1) when violating, 1 otherwise.
double interception_bound(double s1);

/// bits/s = E_c * repetition rate * reading efficiency. reading_efficiency
/// is 1 (complete Bell analysis) or 0.5 (linear optics).
double throughput(double e_c, double rep_rate_hz, double reading_efficiency);

}  // namespace diqsdc
