#include "unit/helpers.hpp"

#include "diqsdc/channel.hpp"
#include "diqsdc/errors.hpp"
#include "diqsdc/nla.hpp"

#include <doctest.h>

using namespace diqsdc;

TEST_CASE("herald probability is eta over two") {
  CHECK(nla_success_probability(1.0) == 0.5);
  CHECK(nla_success_probability(0.5) == 0.25);
  CHECK(nla_success_probability(0.0) == 0.0);
  CHECK_THROWS_AS(nla_success_probability(1.2), DomainError);
}

TEST_CASE("photon-level oracle matches the closed form for every efficiency") {
  for (int i = 0; i <= 10; ++i) {
    const double eta = 0.1 * i;
    const auto r = fock_nla_oracle(eta);
    CHECK(r.p_success == doctest::Approx(eta / 2.0).epsilon(1e-10));
    if (eta == 0.0) {
      CHECK_FALSE(r.fidelity.has_value());
    } else {
      REQUIRE(r.fidelity.has_value());
      CHECK(*r.fidelity == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("oracle distills every Bell target identically") {
  for (BellState target : kAllBellStates) {
    const auto r = fock_nla_oracle(0.37, target);
    CHECK(r.p_success == doctest::Approx(0.185).epsilon(1e-12));
    REQUIRE(r.fidelity.has_value());
    CHECK(*r.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("apply_nla success statistics and output state") {
  const ChannelParams ch{.distance_km = 4.0, .p = 0.92};
  const auto lossy =
      transmit_round(SectoredTwoPhotonState::pure(BellState::PhiPlus), ch, Photon::Check);
  const double eta = transmission_efficiency(ch);

  Rng rng(200);
  std::size_t successes = 0;
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) {
    const auto out = apply_nla(lossy, rng);
    if (!out.success) continue;
    ++successes;
    CHECK(out.restored_state.w_both == 1.0);
    // amplification removes loss but never purifies
    CHECK((out.restored_state.rho_both - lossy.rho_both).cwiseAbs().maxCoeff() < 1e-12);
  }
  const double rate = static_cast<double>(successes) / static_cast<double>(n);
  CHECK(testutil::within_sigma(rate, eta / 2.0, testutil::binomial_stderr(eta / 2.0, n), 3.0));
}

TEST_CASE("apply_nla on a lossless pair succeeds half the time with the pure output") {
  const auto phi = SectoredTwoPhotonState::pure(BellState::PhiPlus);
  Rng rng(201);
  std::size_t successes = 0;
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) {
    const auto out = apply_nla(phi, rng);
    if (out.success) {
      ++successes;
      CHECK((out.restored_state.rho_both - bell_density(BellState::PhiPlus)).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }
  const double rate = static_cast<double>(successes) / static_cast<double>(n);
  CHECK(testutil::within_sigma(rate, 0.5, testutil::binomial_stderr(0.5, n), 3.0));
}

TEST_CASE("apply_nla edge cases") {
  auto gone = SectoredTwoPhotonState::pure(BellState::PhiPlus);
  gone.w_both = 0.0;
  gone.w_message_only = 1.0;
  Rng rng(202);
  for (int i = 0; i < 100; ++i) CHECK_FALSE(apply_nla(gone, rng).success);

  auto vac = gone;
  vac.w_message_only = 0.6;
  vac.w_vacuum = 0.4;
  CHECK_THROWS_AS(apply_nla(vac, rng), MalformedStateError);
}
