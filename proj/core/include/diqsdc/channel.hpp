#pragma once

#include "diqsdc/states.hpp"

namespace diqsdc {

/// Fibre channel model: exponential photon loss with distance plus isotropic
/// (Werner-type) depolarization with parameter p.
struct ChannelParams {
  double distance_km = 0.0;
  double alpha_db_per_km = 0.2;  // telecom-window attenuation
  double p = 1.0;                // Werner parameter
  double device_efficiency = 1.0;  // detector/memory inefficiency folded into eta

  bool valid() const {
    return distance_km >= 0.0 && alpha_db_per_km >= 0.0 && p >= 0.0 && p <= 1.0 &&
           device_efficiency >= 0.0 && device_efficiency <= 1.0;
  }
};

enum class Photon { Check, Message };

/// eta = 10^(-alpha d / 10), times the optional device-efficiency factor.
double transmission_efficiency(const ChannelParams& params);

/// rho_both <- p rho_both + (1-p) I/4; single-photon sectors untouched.
SectoredTwoPhotonState depolarize(const SectoredTwoPhotonState& s, double p);

/// The designated photon survives with probability eta; on loss the
/// surviving partner keeps its partial-trace reduced state.
SectoredTwoPhotonState lose_photon(const SectoredTwoPhotonState& s, double eta, Photon side);

/// One transmission round: depolarize(p), then lose_photon(eta, side).
SectoredTwoPhotonState transmit_round(const SectoredTwoPhotonState& s, const ChannelParams& params,
                                      Photon side);

}  // namespace diqsdc
