#pragma once

#include "diqsdc/analytics.hpp"
#include "diqsdc/channel.hpp"
#include "diqsdc/chsh.hpp"
#include "diqsdc/epp.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace diqsdc {

/// Intercept-resend eavesdropper: measures a fraction of in-flight photons
/// in a uniformly random setting from the receiving measurement set and
/// forwards the post-measurement eigenstate.
struct EveModel {
  enum class Kind { InterceptResend };
  enum class BasisStrategy { RandomProtocolBasis };

  Kind kind = Kind::InterceptResend;
  double fraction_round1 = 0.0;
  double fraction_round2 = 0.0;
  BasisStrategy basis_strategy = BasisStrategy::RandomProtocolBasis;

  bool valid() const {
    return fraction_round1 >= 0.0 && fraction_round1 <= 1.0 && fraction_round2 >= 0.0 &&
           fraction_round2 <= 1.0;
  }
};

struct ProtocolConfig {
  std::size_t n_pairs = 100000;
  ChannelParams channel;
  Variant variant = Variant::Original;
  double check_fraction = 0.5;
  double target_fidelity = 0.99;  // modified variant only
  std::size_t max_k = 32;
  std::optional<EveModel> eve;
  std::uint64_t seed = 0;
  BellAnalysisMode bell_analysis_mode = BellAnalysisMode::Complete;
  std::size_t min_check_pairs = 10000;
  unsigned threads = 0;  // 0 = machine parallelism
  /// Optional fixed payload; message dibits are uniform random when absent.
  std::optional<std::vector<MessageDibit>> payload;
};

enum class AbortStage { None, Round1, Round2 };

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

struct TranscriptStats {
  Estimate s1, q1, s2, q2;
  AbortStage aborted_at = AbortStage::None;
  double r_loss_empirical = 0.0;
  double r_error_empirical = 0.0;
  std::size_t dibits_sent = 0;
  std::size_t dibits_correct = 0;
  std::size_t dibits_lost = 0;
  std::size_t dibits_unreadable = 0;
  std::size_t eve_dibits_learned = 0;
  bool round1_warning = false;
  bool round2_warning = false;
  /// Modified variant only: purification plan and pair accounting.
  EppSchedule epp;
  std::size_t pairs_delivered = 0;
};

/// Deterministic channel form of the measure-resend attack on the designated
/// photon, averaged over the attacker's setting and outcome. `which` selects
/// the measurement set: the check photon is attacked with Bob's settings,
/// the message photon with Alice's.
SectoredTwoPhotonState intercept_resend_channel(const SectoredTwoPhotonState& s, Photon which);

/// Round security check: delegates to estimate_security with the round's
/// check subset; the verdict drives the abort decision.
SecurityCheckResult security_check_round(const StateMixture& pairs, std::size_t n_check,
                                         std::uint64_t seed, const SecurityCheckOptions& opts = {});

/// Steps 1-5 of the protocol: round-one transmission of the check photons,
/// first security check, Pauli encoding, sequence shuffle, round-two
/// transmission, sequence restoration, second security check, Bell-state
/// analysis and statistics assembly. Bit-identical for a fixed (config, seed)
/// at any thread count.
TranscriptStats run_original(const ProtocolConfig& cfg);

/// Loss-compensated variant: heralded amplification after each transmission
/// (failed round-two heralds trigger re-encoding on the next pair, so no
/// message is ever lost) and purification of the round-one pairs up to the
/// target fidelity.
TranscriptStats run_modified(const ProtocolConfig& cfg);

TranscriptStats run_protocol(const ProtocolConfig& cfg);

}  // namespace diqsdc
