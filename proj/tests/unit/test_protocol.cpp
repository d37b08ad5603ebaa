#include "unit/helpers.hpp"

#include "diqsdc/channel.hpp"
#include "diqsdc/errors.hpp"
#include "diqsdc/protocol.hpp"

#include <doctest.h>

using namespace diqsdc;

namespace {

bool stats_equal(const TranscriptStats& a, const TranscriptStats& b) {
  return a.s1.value == b.s1.value && a.q1.value == b.q1.value && a.s2.value == b.s2.value &&
         a.q2.value == b.q2.value && a.aborted_at == b.aborted_at &&
         a.r_loss_empirical == b.r_loss_empirical && a.r_error_empirical == b.r_error_empirical &&
         a.dibits_sent == b.dibits_sent && a.dibits_correct == b.dibits_correct &&
         a.dibits_lost == b.dibits_lost && a.dibits_unreadable == b.dibits_unreadable &&
         a.eve_dibits_learned == b.eve_dibits_learned;
}

}  // namespace

TEST_CASE("noiseless end-to-end run decodes every dibit") {
  ProtocolConfig cfg;
  cfg.n_pairs = 100000;
  cfg.seed = 3;
  const auto stats = run_original(cfg);
  CHECK(stats.aborted_at == AbortStage::None);
  CHECK(stats.dibits_sent == 25000);
  CHECK(stats.dibits_correct == stats.dibits_sent);
  CHECK(stats.dibits_lost == 0);
  CHECK(stats.r_error_empirical == 0.0);
  CHECK(stats.r_loss_empirical == 0.0);
  CHECK(testutil::within_sigma(stats.s1.value, 2.0 * std::numbers::sqrt2, stats.s1.stderr_, 3.0));
}

TEST_CASE("shuffle round-trip: a fixed payload survives the permutation exactly") {
  ProtocolConfig cfg;
  cfg.n_pairs = 100000;
  cfg.seed = 9;
  std::vector<MessageDibit> payload;
  for (int i = 0; i < 1000; ++i) payload.push_back(MessageDibit{static_cast<std::uint8_t>(i % 4)});
  cfg.payload = payload;
  const auto stats = run_original(cfg);
  CHECK(stats.dibits_correct == stats.dibits_sent);
}

TEST_CASE("empirical loss and error rates converge to the closed forms") {
  ProtocolConfig cfg;
  cfg.n_pairs = 1000000;
  cfg.channel = {.distance_km = 1.0, .p = 0.95};
  cfg.seed = 101;
  const auto stats = run_original(cfg);
  REQUIRE(stats.aborted_at == AbortStage::None);

  const double eta = transmission_efficiency(cfg.channel);
  const double n_msg = static_cast<double>(stats.dibits_sent);
  const double r_loss_true = 1.0 - eta * eta;
  CHECK(testutil::within_sigma(stats.r_loss_empirical, r_loss_true,
                               testutil::binomial_stderr(r_loss_true, n_msg), 3.0));
  const double r_err_true = 0.75 * (1.0 - 0.95 * 0.95);
  const double analyzed = static_cast<double>(stats.dibits_sent - stats.dibits_lost);
  CHECK(testutil::within_sigma(stats.r_error_empirical, r_err_true,
                               testutil::binomial_stderr(r_err_true, analyzed), 3.0));

  // check estimates against the exact polynomial values
  const double s2r2 = 2.0 * std::numbers::sqrt2;
  CHECK(testutil::within_sigma(stats.s1.value, s2r2 * eta * 0.95, stats.s1.stderr_, 4.0));
  CHECK(testutil::within_sigma(stats.q1.value, 0.5 * (1.0 - eta * 0.95), stats.q1.stderr_, 4.0));
  CHECK(testutil::within_sigma(stats.s2.value, s2r2 * eta * eta * 0.95 * 0.95, stats.s2.stderr_,
                               4.0));
  CHECK(testutil::within_sigma(stats.q2.value, 0.5 * (1.0 - eta * eta * 0.95 * 0.95),
                               stats.q2.stderr_, 4.0));
}

TEST_CASE("deep depolarization aborts at the first check") {
  ProtocolConfig cfg;
  cfg.n_pairs = 100000;
  cfg.channel.p = 0.5;
  cfg.seed = 5;
  const auto stats = run_original(cfg);
  CHECK(stats.aborted_at == AbortStage::Round1);
  CHECK(stats.s1.value < 2.0);
  CHECK(stats.dibits_sent == 0);
}

TEST_CASE("linear-optics readout halves the throughput but stays error-free") {
  ProtocolConfig cfg;
  cfg.n_pairs = 100000;
  cfg.seed = 19;
  cfg.bell_analysis_mode = BellAnalysisMode::LinearOptics;
  const auto stats = run_original(cfg);
  const double frac =
      static_cast<double>(stats.dibits_unreadable) / static_cast<double>(stats.dibits_sent);
  CHECK(testutil::within_sigma(
      frac, 0.5, testutil::binomial_stderr(0.5, static_cast<double>(stats.dibits_sent)), 3.0));
  CHECK(stats.r_error_empirical == 0.0);  // erasures are not errors
  CHECK(stats.dibits_correct + stats.dibits_unreadable == stats.dibits_sent);
}

TEST_CASE("intercept-resend channel: full attack destroys the violation") {
  const auto phi = SectoredTwoPhotonState::pure(BellState::PhiPlus);
  const auto attacked = intercept_resend_channel(phi, Photon::Check);
  CHECK(chsh_exact(attacked) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-10));
  CHECK(attacked.valid());

  ProtocolConfig cfg;
  cfg.n_pairs = 100000;
  cfg.seed = 23;
  cfg.eve = EveModel{.fraction_round1 = 1.0};
  const auto stats = run_original(cfg);
  CHECK(stats.aborted_at == AbortStage::Round1);
}

TEST_CASE("zero-fraction eavesdropper leaves the run unchanged") {
  ProtocolConfig cfg;
  cfg.n_pairs = 100000;
  cfg.channel = {.distance_km = 0.5, .p = 0.97};
  cfg.seed = 31;
  const auto plain = run_original(cfg);
  cfg.eve = EveModel{};
  const auto with_eve = run_original(cfg);
  CHECK(stats_equal(plain, with_eve));
}

TEST_CASE("round-2-only interception reads nothing") {
  ProtocolConfig cfg;
  cfg.n_pairs = 100000;
  cfg.seed = 37;
  cfg.eve = EveModel{.fraction_round2 = 0.5};
  const auto stats = run_original(cfg);
  CHECK(stats.aborted_at == AbortStage::None);  // diluted attack stays above the bound
  CHECK(stats.dibits_sent > 0);
  CHECK(stats.eve_dibits_learned == 0);

  cfg.eve = EveModel{.fraction_round2 = 1.0};
  const auto full = run_original(cfg);
  CHECK(full.aborted_at == AbortStage::Round2);  // but the check still catches her
  CHECK(full.eve_dibits_learned == 0);
}

TEST_CASE("both-round interception is counted against the pair bookkeeping") {
  ProtocolConfig cfg;
  cfg.n_pairs = 100000;
  cfg.seed = 41;
  cfg.eve = EveModel{.fraction_round1 = 0.2, .fraction_round2 = 0.2};
  const auto stats = run_original(cfg);
  REQUIRE(stats.aborted_at == AbortStage::None);
  const double n = static_cast<double>(stats.dibits_sent);
  const double frac = static_cast<double>(stats.eve_dibits_learned) / n;
  CHECK(testutil::within_sigma(frac, 0.04, testutil::binomial_stderr(0.04, n), 3.0));
}

TEST_CASE("runs are bit-identical across thread counts") {
  ProtocolConfig cfg;
  cfg.n_pairs = 200000;
  cfg.channel = {.distance_km = 1.0, .p = 0.96};
  cfg.seed = 53;
  cfg.eve = EveModel{.fraction_round1 = 0.05, .fraction_round2 = 0.1};
  cfg.threads = 1;
  const auto one = run_original(cfg);
  cfg.threads = 5;
  const auto five = run_original(cfg);
  CHECK(stats_equal(one, five));

  ProtocolConfig mod;
  mod.variant = Variant::Modified;
  mod.n_pairs = 2000000;
  mod.channel = {.distance_km = 2.0, .p = 0.99};
  mod.seed = 53;
  mod.min_check_pairs = 1000;
  mod.threads = 1;
  const auto m1 = run_protocol(mod);
  mod.threads = 6;
  const auto m6 = run_protocol(mod);
  CHECK(stats_equal(m1, m6));
}

TEST_CASE("amplified variant: no message loss and the expected residual error rate") {
  ProtocolConfig cfg;
  cfg.variant = Variant::Modified;
  cfg.n_pairs = 20000000;
  cfg.channel = {.distance_km = 5.0, .p = 0.98};
  cfg.seed = 61;
  cfg.min_check_pairs = 2000;
  const auto stats = run_modified(cfg);
  REQUIRE(stats.aborted_at == AbortStage::None);
  CHECK(stats.r_loss_empirical == 0.0);
  CHECK(stats.dibits_lost == 0);
  CHECK(stats.epp.k == 2);
  CHECK(stats.dibits_sent > 1000);
  CHECK(stats.pairs_delivered >= stats.dibits_sent);
  // second check sees the purified pairs after one more depolarizing pass
  const double p_k = (4.0 * stats.epp.final_fidelity - 1.0) / 3.0;
  CHECK(testutil::within_sigma(stats.q2.value, 0.5 * (1.0 - p_k * 0.98), stats.q2.stderr_, 4.0));
  CHECK(testutil::within_sigma(stats.s1.value, 2.0 * std::numbers::sqrt2 * p_k, stats.s1.stderr_,
                               4.0));
}

TEST_CASE("amplified variant degenerates to the original on a perfect channel") {
  ProtocolConfig cfg;
  cfg.variant = Variant::Modified;
  cfg.n_pairs = 400000;
  cfg.seed = 67;
  const auto stats = run_modified(cfg);
  REQUIRE(stats.aborted_at == AbortStage::None);
  CHECK(stats.epp.k == 0);
  CHECK(stats.r_error_empirical == 0.0);
  CHECK(stats.dibits_correct == stats.dibits_sent);
  // quarter pair-budget overhead: two herald coins at 1/2 each
  const double expected_msgs = 400000.0 * 0.25 * 0.25;  // two checks consume half each round
  CHECK(std::abs(static_cast<double>(stats.dibits_sent) - expected_msgs) <
        5.0 * std::sqrt(expected_msgs));
}

TEST_CASE("amplified pair budget follows the herald and purification products") {
  ProtocolConfig cfg;
  cfg.variant = Variant::Modified;
  cfg.n_pairs = 10000000;
  cfg.channel = {.distance_km = 3.0, .p = 0.98};
  cfg.seed = 71;
  cfg.min_check_pairs = 1000;
  const auto stats = run_modified(cfg);
  REQUIRE(stats.aborted_at == AbortStage::None);
  const double eta = transmission_efficiency(cfg.channel);
  double product = 1.0;
  for (double ps : stats.epp.per_step_success) product *= ps;
  // survivors: herald eta/2, then k halving rounds, the first check takes
  // half, the second herald, and the second check takes half again
  const double expected = 10000000.0 * (eta / 2.0) * product /
                          std::pow(2.0, static_cast<double>(stats.epp.k)) * 0.5 * (eta / 2.0) *
                          0.5;
  CHECK(std::abs(static_cast<double>(stats.pairs_delivered) - expected) <
        expected * 0.05 + 5.0 * std::sqrt(expected));
}

TEST_CASE("configuration invariants are enforced") {
  ProtocolConfig cfg;
  cfg.n_pairs = 100000;
  cfg.check_fraction = 1.5;
  CHECK_THROWS_AS(run_original(cfg), ConfigError);
  cfg.check_fraction = 0.5;
  cfg.channel.p = 2.0;
  CHECK_THROWS_AS(run_original(cfg), ConfigError);
  cfg.channel.p = 1.0;
  cfg.eve = EveModel{.fraction_round1 = -0.1};
  CHECK_THROWS_AS(run_original(cfg), ConfigError);
  cfg.eve = EveModel{.fraction_round1 = 0.5};
  cfg.variant = Variant::Modified;
  CHECK_THROWS_AS(run_modified(cfg), ConfigError);

  ProtocolConfig small;
  small.n_pairs = 10000;  // check subset below the default minimum
  CHECK_THROWS_AS(run_original(small), InsufficientSamplesError);

  ProtocolConfig low;
  low.variant = Variant::Modified;
  low.n_pairs = 100000;
  low.channel.p = 0.2;
  CHECK_THROWS_AS(run_modified(low), EppIneffectiveError);
}

TEST_CASE("warn flag on a marginal violation") {
  ProtocolConfig cfg;
  cfg.n_pairs = 100000;
  // eta p just above 1/sqrt2 leaves S barely over the bound
  cfg.channel.p = 0.72;
  cfg.seed = 83;
  const auto stats = run_original(cfg);
  CHECK(stats.round1_warning);
}
