#pragma once

#include "diqsdc/rng.hpp"
#include "diqsdc/states.hpp"

#include <optional>

namespace diqsdc {

/// Total herald probability of the linear-optics amplifier: eta / 2.
double nla_success_probability(double eta);

/// Diagonal-basis detector record of the two analysis stations, written as
/// H/V after the wave plates. Same-letter patterns herald the target state
/// directly, mixed patterns after the feed-forward phase flip.
struct HeraldPattern {
  bool d1_h = true;
  bool d2_h = true;
};

struct NlaOutcome {
  bool success = false;
  SectoredTwoPhotonState restored_state;  // w_both = 1 iff success
  HeraldPattern herald;
};

/// Heralded amplification of a one-round lossy state: succeeds with
/// probability w_both / 2; on success the output is the input both-photon
/// sector renormalized (loss removed, decoherence untouched). Throws
/// MalformedStateError if the input has vacuum weight (two-loss inputs are
/// outside this amplifier's domain).
NlaOutcome apply_nla(const SectoredTwoPhotonState& s, Rng& rng);

struct FockNlaResult {
  double p_success = 0.0;
  std::optional<double> fidelity;  // absent when nothing is heralded
};

/// Photon-level oracle: enumerates the amplitudes of the lossy input plus
/// the ancilla Bell pair through the polarizing-beam-splitter network,
/// post-selects exactly one photon at each analysis station, applies the
/// feed-forward correction, and reports total success probability and the
/// fidelity of the conditional state to the target Bell state.
FockNlaResult fock_nla_oracle(double eta, BellState target = BellState::PhiPlus);

}  // namespace diqsdc
