#include "diqsdc/channel.hpp"

#include "diqsdc/errors.hpp"

#include <cmath>

namespace diqsdc {

double transmission_efficiency(const ChannelParams& params) {
  if (!params.valid()) throw DomainError("invalid channel parameters");
  return std::pow(10.0, -params.alpha_db_per_km * params.distance_km / 10.0) *
         params.device_efficiency;
}

SectoredTwoPhotonState depolarize(const SectoredTwoPhotonState& s, double p) {
  if (p < 0.0 || p > 1.0) throw DomainError("Werner parameter outside [0,1]");
  SectoredTwoPhotonState out = s;
  out.rho_both = p * s.rho_both + (1.0 - p) * 0.25 * Matrix4::Identity();
  return out;
}

SectoredTwoPhotonState lose_photon(const SectoredTwoPhotonState& s, double eta, Photon side) {
  if (eta < 0.0 || eta > 1.0) throw DomainError("efficiency outside [0,1]");
  SectoredTwoPhotonState out = s;
  const double loss = 1.0 - eta;
  if (side == Photon::Check) {
    out.w_both = eta * s.w_both;
    // lost check photon leaves the reduced state of the message photon
    const double moved = loss * s.w_both;
    const double w_msg = s.w_message_only + moved;
    if (w_msg > 0.0) {
      out.rho_message = (s.w_message_only * s.rho_message + moved * trace_out_check(s.rho_both)) / w_msg;
    }
    out.w_message_only = w_msg;
    out.w_check_only = eta * s.w_check_only;
    out.w_vacuum = s.w_vacuum + loss * s.w_check_only;
  } else {
    out.w_both = eta * s.w_both;
    const double moved = loss * s.w_both;
    const double w_chk = s.w_check_only + moved;
    if (w_chk > 0.0) {
      out.rho_check = (s.w_check_only * s.rho_check + moved * trace_out_message(s.rho_both)) / w_chk;
    }
    out.w_check_only = w_chk;
    out.w_message_only = eta * s.w_message_only;
    out.w_vacuum = s.w_vacuum + loss * s.w_message_only;
  }
  return out;
}

SectoredTwoPhotonState transmit_round(const SectoredTwoPhotonState& s, const ChannelParams& params,
                                      Photon side) {
  return lose_photon(depolarize(s, params.p), transmission_efficiency(params), side);
}

}  // namespace diqsdc
