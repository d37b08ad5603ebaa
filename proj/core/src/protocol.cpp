#include "diqsdc/protocol.hpp"

#include "diqsdc/errors.hpp"
#include "diqsdc/nla.hpp"
#include "diqsdc/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace diqsdc {

namespace {

// Sub-stream purposes under the master seed.
constexpr std::uint64_t kPurposeMessage = 0x6d53;
constexpr std::uint64_t kPurposeDibit = 0xd1b1;
constexpr std::uint64_t kPurposeShuffle = 0x5481;
constexpr std::uint64_t kPurposeNla = 0x41a0;
constexpr std::uint64_t kPurposeEpp = 0xe990;
constexpr std::uint64_t kPurposeSubSeed = 0xc4ec;

std::uint64_t sub_seed(std::uint64_t master, std::uint64_t which) {
  return Rng::derive(master, kPurposeSubSeed, which).next_u64();
}

void validate(const ProtocolConfig& cfg) {
  if (!cfg.channel.valid()) throw ConfigError("invalid channel parameters");
  if (cfg.n_pairs < 4) throw ConfigError("pair budget too small");
  if (cfg.check_fraction <= 0.0 || cfg.check_fraction >= 1.0)
    throw ConfigError("check fraction must lie in (0,1)");
  if (cfg.eve && !cfg.eve->valid()) throw ConfigError("eavesdropper fractions outside [0,1]");
  if (cfg.payload && cfg.payload->empty()) throw ConfigError("fixed payload must be nonempty");
  if (cfg.payload) {
    for (MessageDibit m : *cfg.payload)
      if (m.bits > 3) throw ConfigError("payload dibit out of range");
  }
}

Estimate s_of(const SecurityCheckResult& r) { return {r.s_estimate, r.s_stderr}; }
Estimate q_of(const SecurityCheckResult& r) { return {r.q_estimate, r.q_stderr}; }

// Per-slot decode record kept in transmitted order until restoration.
struct SlotOutcome {
  std::uint8_t kind = 0;  // 0 identified, 1 unreadable, 2 missing
  std::uint8_t decoded = 0;
  bool eve_both = false;
};

std::vector<MessageDibit> draw_dibits(const ProtocolConfig& cfg, std::size_t n) {
  std::vector<MessageDibit> dibits(n);
  if (cfg.payload) {
    for (std::size_t i = 0; i < n; ++i) dibits[i] = (*cfg.payload)[i % cfg.payload->size()];
  } else {
    for (std::size_t i = 0; i < n; ++i)
      dibits[i].bits =
          static_cast<std::uint8_t>(Rng::derive(cfg.seed, kPurposeDibit, i).next_below(4));
  }
  return dibits;
}

std::vector<std::size_t> shuffled_positions(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Rng rng = Rng::derive(seed, kPurposeShuffle, 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.next_below(i)]);
  return perm;
}

// Bernoulli thinning with a per-index stream; the count is reproducible at
// any thread count.
std::size_t count_survivors(std::size_t n, double p, std::uint64_t seed, std::uint64_t purpose,
                            unsigned threads) {
  return parallel_index_reduce(
      n, threads, std::size_t{0},
      [&](std::size_t& acc, std::size_t i) {
        if (Rng::derive(seed, purpose, i).bernoulli(p)) ++acc;
      },
      [](std::size_t& acc, std::size_t part) { acc += part; });
}

void tally_messages(TranscriptStats& stats, const std::vector<MessageDibit>& dibits,
                    const std::vector<std::size_t>& perm, const std::vector<SlotOutcome>& slots) {
  // Restore the transmitted sequence: slot t carried the pair that sits at
  // original position perm[t].
  std::vector<SlotOutcome> restored(slots.size());
  for (std::size_t t = 0; t < slots.size(); ++t) restored[perm[t]] = slots[t];

  stats.dibits_sent = dibits.size();
  std::size_t identified = 0;
  for (std::size_t i = 0; i < dibits.size(); ++i) {
    const SlotOutcome& o = restored[i];
    if (o.eve_both) ++stats.eve_dibits_learned;
    switch (o.kind) {
      case 0:
        ++identified;
        if (o.decoded == dibits[i].bits) ++stats.dibits_correct;
        break;
      case 1: ++stats.dibits_unreadable; break;
      default: ++stats.dibits_lost; break;
    }
  }
  stats.r_loss_empirical =
      stats.dibits_sent == 0
          ? 0.0
          : static_cast<double>(stats.dibits_lost) / static_cast<double>(stats.dibits_sent);
  stats.r_error_empirical =
      identified == 0
          ? 0.0
          : static_cast<double>(identified - stats.dibits_correct) / static_cast<double>(identified);
  stats.pairs_delivered = identified + stats.dibits_unreadable;
}

}  // namespace

SectoredTwoPhotonState intercept_resend_channel(const SectoredTwoPhotonState& s, Photon which) {
  // The attacker mimics the receiver, so the resend basis comes from the
  // receiving party's setting list.
  const Party party = which == Photon::Check ? Party::Bob : Party::Alice;
  std::vector<double> phases;
  if (party == Party::Bob) {
    phases.assign(kBobSettings.begin(), kBobSettings.end());
  } else {
    phases.assign(kAliceSettings.begin(), kAliceSettings.end());
  }

  SectoredTwoPhotonState out = s;
  Matrix4 rho4 = Matrix4::Zero();
  Matrix2 rho2 = Matrix2::Zero();
  const Matrix2& single = which == Photon::Check ? s.rho_check : s.rho_message;
  for (double theta : phases) {
    for (int outcome : {+1, -1}) {
      const Matrix2 proj = outcome_projector(party, theta, outcome);
      const Matrix4 k4 =
          which == Photon::Check ? kron(proj, Matrix2::Identity()) : kron(Matrix2::Identity(), proj);
      rho4 += k4 * s.rho_both * k4.adjoint();
      rho2 += proj * single * proj.adjoint();
    }
  }
  out.rho_both = rho4 / static_cast<double>(phases.size());
  (which == Photon::Check ? out.rho_check : out.rho_message) =
      rho2 / static_cast<double>(phases.size());
  return out;
}

SecurityCheckResult security_check_round(const StateMixture& pairs, std::size_t n_check,
                                         std::uint64_t seed, const SecurityCheckOptions& opts) {
  return estimate_security(pairs, n_check, seed, opts);
}

TranscriptStats run_original(const ProtocolConfig& cfg) {
  validate(cfg);
  const unsigned threads = resolve_threads(cfg.threads);
  const SecurityCheckOptions opts{cfg.min_check_pairs, 100, threads};
  const double f1 = cfg.eve ? cfg.eve->fraction_round1 : 0.0;
  const double f2 = cfg.eve ? cfg.eve->fraction_round2 : 0.0;

  TranscriptStats stats;

  // Round 1: the check photon of every pair crosses the channel.
  const SectoredTwoPhotonState clean1 =
      transmit_round(SectoredTwoPhotonState::pure(BellState::PhiPlus), cfg.channel, Photon::Check);
  const SectoredTwoPhotonState eved1 = intercept_resend_channel(clean1, Photon::Check);

  StateMixture source1;
  if (f1 < 1.0) source1.push_back({1.0 - f1, clean1});
  if (f1 > 0.0) source1.push_back({f1, eved1});

  const std::size_t n_check1 =
      static_cast<std::size_t>(std::llround(cfg.check_fraction * static_cast<double>(cfg.n_pairs)));
  const SecurityCheckResult res1 = estimate_security(source1, n_check1, sub_seed(cfg.seed, 1), opts);
  stats.s1 = s_of(res1);
  stats.q1 = q_of(res1);
  stats.round1_warning = res1.marginal_warning;
  if (res1.verdict == SecurityCheckResult::Verdict::Abort) {
    stats.aborted_at = AbortStage::Round1;
    return stats;
  }

  const std::size_t n_round2 = cfg.n_pairs - n_check1;
  const std::size_t n_check2 =
      static_cast<std::size_t>(std::llround(cfg.check_fraction * static_cast<double>(n_round2)));
  if (n_round2 <= n_check2) throw ConfigError("check fractions leave no message pairs");
  const std::size_t n_msg = n_round2 - n_check2;

  // Round-trip states for every (round-1 attacked, round-2 attacked) case,
  // before encoding.
  std::array<SectoredTwoPhotonState, 4> base;  // index 2*e1 + e2
  for (int e1 = 0; e1 < 2; ++e1) {
    const SectoredTwoPhotonState sent =
        transmit_round(e1 ? eved1 : clean1, cfg.channel, Photon::Message);
    base[2 * e1 + 0] = sent;
    base[2 * e1 + 1] = intercept_resend_channel(sent, Photon::Message);
  }

  StateMixture source2;
  for (int e1 = 0; e1 < 2; ++e1) {
    for (int e2 = 0; e2 < 2; ++e2) {
      const double w = (e1 ? f1 : 1.0 - f1) * (e2 ? f2 : 1.0 - f2);
      if (w > 0.0) source2.push_back({w, base[2 * e1 + e2]});
    }
  }
  const SecurityCheckResult res2 = estimate_security(source2, n_check2, sub_seed(cfg.seed, 2), opts);
  stats.s2 = s_of(res2);
  stats.q2 = q_of(res2);
  stats.round2_warning = res2.marginal_warning;
  if (res2.verdict == SecurityCheckResult::Verdict::Abort) {
    stats.aborted_at = AbortStage::Round2;
    return stats;
  }

  // Message phase. Pair states are i.i.d., so precompute the sixteen
  // (dibit, attack pattern) variants once.
  std::array<SectoredTwoPhotonState, 16> variants;  // index 4*dibit + 2*e1 + e2
  for (int m = 0; m < 4; ++m) {
    for (int e1 = 0; e1 < 2; ++e1) {
      const SectoredTwoPhotonState sent = transmit_round(
          apply_encoding(e1 ? eved1 : clean1, MessageDibit{static_cast<std::uint8_t>(m)}),
          cfg.channel, Photon::Message);
      variants[4 * m + 2 * e1 + 0] = sent;
      variants[4 * m + 2 * e1 + 1] = intercept_resend_channel(sent, Photon::Message);
    }
  }

  const std::vector<MessageDibit> dibits = draw_dibits(cfg, n_msg);
  const std::vector<std::size_t> perm = shuffled_positions(n_msg, cfg.seed);
  std::vector<SlotOutcome> slots(n_msg);
  parallel_index_reduce(
      n_msg, threads, 0,
      [&](int&, std::size_t t) {
        Rng rng = Rng::derive(cfg.seed, kPurposeMessage, t);
        const bool e1 = rng.bernoulli(f1);
        const bool e2 = rng.bernoulli(f2);
        const int m = dibits[perm[t]].bits;
        const BellAnalysisOutcome o =
            bell_analysis(variants[4 * m + 2 * e1 + (e2 ? 1 : 0)], cfg.bell_analysis_mode, rng);
        SlotOutcome& slot = slots[t];
        slot.eve_both = e1 && e2;
        switch (o.kind) {
          case BellAnalysisOutcome::Kind::Identified:
            slot.kind = 0;
            slot.decoded = dibit_of(*o.state).bits;
            break;
          case BellAnalysisOutcome::Kind::Unreadable: slot.kind = 1; break;
          case BellAnalysisOutcome::Kind::PhotonMissing: slot.kind = 2; break;
        }
      },
      [](int&, int) {});

  tally_messages(stats, dibits, perm, slots);
  return stats;
}

TranscriptStats run_modified(const ProtocolConfig& cfg) {
  validate(cfg);
  if (cfg.eve && (cfg.eve->fraction_round1 > 0.0 || cfg.eve->fraction_round2 > 0.0))
    throw ConfigError("eavesdropper models are only wired into the original variant");
  const unsigned threads = resolve_threads(cfg.threads);
  const SecurityCheckOptions opts{cfg.min_check_pairs, 100, threads};

  TranscriptStats stats;
  stats.epp = plan_epp(cfg.channel.p, cfg.target_fidelity, cfg.max_k);

  const double p_herald = nla_success_probability(transmission_efficiency(cfg.channel));

  // Round 1: amplify each transmitted check photon; failed heralds discard
  // the pair. Survivors carry the decohered but loss-free pair.
  std::size_t n = count_survivors(cfg.n_pairs, p_herald, cfg.seed, kPurposeNla, threads);

  // Pairwise purification, halving the pool each round.
  for (std::size_t step = 0; step < stats.epp.k; ++step) {
    n = count_survivors(n / 2, stats.epp.per_step_success[step], cfg.seed, kPurposeEpp + step,
                        threads);
  }
  const double p_pure =
      stats.epp.k == 0 ? cfg.channel.p : (4.0 * stats.epp.final_fidelity - 1.0) / 3.0;
  const SectoredTwoPhotonState purified =
      depolarize(SectoredTwoPhotonState::pure(BellState::PhiPlus), p_pure);

  const std::size_t n_check1 =
      static_cast<std::size_t>(std::llround(cfg.check_fraction * static_cast<double>(n)));
  const SecurityCheckResult res1 =
      estimate_security({{1.0, purified}}, n_check1, sub_seed(cfg.seed, 1), opts);
  stats.s1 = s_of(res1);
  stats.q1 = q_of(res1);
  stats.round1_warning = res1.marginal_warning;
  if (res1.verdict == SecurityCheckResult::Verdict::Abort) {
    stats.aborted_at = AbortStage::Round1;
    return stats;
  }

  // Round 2: amplify each transmitted message photon; a failed herald makes
  // the sender re-encode on the next pair, so no message is ever lost.
  const std::size_t n_round2 = n - n_check1;
  const std::size_t n2 = count_survivors(n_round2, p_herald, cfg.seed, kPurposeNla + 1, threads);
  const std::size_t n_check2 =
      static_cast<std::size_t>(std::llround(cfg.check_fraction * static_cast<double>(n2)));
  if (n2 <= n_check2) throw ConfigError("check fractions leave no message pairs");
  const std::size_t n_msg = n2 - n_check2;

  const SectoredTwoPhotonState delivered = depolarize(purified, cfg.channel.p);
  const SecurityCheckResult res2 =
      estimate_security({{1.0, delivered}}, n_check2, sub_seed(cfg.seed, 2), opts);
  stats.s2 = s_of(res2);
  stats.q2 = q_of(res2);
  stats.round2_warning = res2.marginal_warning;
  if (res2.verdict == SecurityCheckResult::Verdict::Abort) {
    stats.aborted_at = AbortStage::Round2;
    return stats;
  }

  std::array<SectoredTwoPhotonState, 4> variants;
  for (int m = 0; m < 4; ++m)
    variants[m] = apply_encoding(delivered, MessageDibit{static_cast<std::uint8_t>(m)});

  const std::vector<MessageDibit> dibits = draw_dibits(cfg, n_msg);
  const std::vector<std::size_t> perm = shuffled_positions(n_msg, cfg.seed);
  std::vector<SlotOutcome> slots(n_msg);
  parallel_index_reduce(
      n_msg, threads, 0,
      [&](int&, std::size_t t) {
        Rng rng = Rng::derive(cfg.seed, kPurposeMessage, t);
        const BellAnalysisOutcome o =
            bell_analysis(variants[dibits[perm[t]].bits], cfg.bell_analysis_mode, rng);
        SlotOutcome& slot = slots[t];
        switch (o.kind) {
          case BellAnalysisOutcome::Kind::Identified:
            slot.kind = 0;
            slot.decoded = dibit_of(*o.state).bits;
            break;
          case BellAnalysisOutcome::Kind::Unreadable: slot.kind = 1; break;
          case BellAnalysisOutcome::Kind::PhotonMissing: slot.kind = 2; break;
        }
      },
      [](int&, int) {});

  tally_messages(stats, dibits, perm, slots);
  return stats;
}

TranscriptStats run_protocol(const ProtocolConfig& cfg) {
  return cfg.variant == Variant::Original ? run_original(cfg) : run_modified(cfg);
}

}  // namespace diqsdc
