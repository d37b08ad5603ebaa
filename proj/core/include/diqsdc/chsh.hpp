#pragma once

#include "diqsdc/measurement.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace diqsdc {

struct SecurityCheckResult {
  enum class Verdict { Secure, Abort };

  double s_estimate = 0.0;
  double s_stderr = 0.0;
  double q_estimate = 0.0;
  double q_stderr = 0.0;
  std::size_t n_pairs_used = 0;
  Verdict verdict = Verdict::Abort;
  /// Set when s_estimate - 2 < 3 * s_stderr: the violation is not
  /// statistically resolved from the abort line.
  bool marginal_warning = false;
};

/// Heterogeneous pair source: a convex mixture of sectored states.
using StateMixture = std::vector<std::pair<double, SectoredTwoPhotonState>>;

/// Samples one (+-1, +-1) outcome pair: sector by weight, then the exact
/// joint distribution in the both-photon sector; a missing photon's outcome
/// is a fair coin.
std::pair<int, int> sample_pair_outcome(const SectoredTwoPhotonState& s, double theta_a,
                                        double theta_b, Rng& rng);

/// S = <a1 b1> + <a1 b2> + <a2 b1> - <a2 b2>, exact from the state.
double chsh_exact(const SectoredTwoPhotonState& s);

struct SecurityCheckOptions {
  std::size_t min_pairs = 10000;
  std::size_t min_cell = 100;
  unsigned threads = 1;
};

/// Assigns i.i.d. uniform settings per pair, estimates the four CHSH
/// correlators from the {A1,A2}x{B1,B2} cells and Q = P(a0 != b1) from the
/// (A0,B1) cell, with binomial standard errors. Verdict is Abort iff the
/// estimated S <= 2. Deterministic in (seed); independent of thread count.
SecurityCheckResult estimate_security(const StateMixture& source, std::size_t n_check,
                                      std::uint64_t seed,
                                      const SecurityCheckOptions& opts = {});

}  // namespace diqsdc
