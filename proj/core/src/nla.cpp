#include "diqsdc/nla.hpp"

#include "diqsdc/errors.hpp"

#include <array>
#include <cmath>
#include <map>

namespace diqsdc {

double nla_success_probability(double eta) {
  if (eta < 0.0 || eta > 1.0) throw DomainError("efficiency outside [0,1]");
  return 0.5 * eta;
}

NlaOutcome apply_nla(const SectoredTwoPhotonState& s, Rng& rng) {
  if (s.w_vacuum > 1e-12)
    throw MalformedStateError("two-loss input is outside the amplifier's domain");
  NlaOutcome out;
  if (!rng.bernoulli(s.w_both / 2.0)) return out;
  out.success = true;
  // All four detector patterns are equally likely on accepted events.
  out.herald = {.d1_h = (rng.next_u64() & 1) != 0, .d2_h = (rng.next_u64() & 1) != 0};
  out.restored_state = SectoredTwoPhotonState::from_two_qubit(s.rho_both);
  return out;
}

namespace {

// Occupation of the network outputs after routing: the retained photon
// polarization (a0), the two analysis-station modes as (nH, nV) pairs, and
// the output-mode photon polarization. -1 marks an absent output photon.
struct ModeConfig {
  int a0;
  int o1h, o1v;
  int o2h, o2v;
  int out;

  auto operator<=>(const ModeConfig&) const = default;
};

using Amplitudes = std::map<ModeConfig, Complex>;

// PBS routing of the incoming photon (input port 1) and the first ancilla
// photon (input port 2): H transmits straight through, V reflects across.
void route(Amplitudes& amps, Complex amp, int a0, int b0 /* -1 = lost */, int b1, int b2) {
  ModeConfig cfg{a0, 0, 0, 0, 0, b2};
  if (b0 == 0) ++cfg.o1h;
  if (b0 == 1) ++cfg.o2v;
  if (b1 == 0) ++cfg.o2h;
  if (b1 == 1) ++cfg.o1v;
  amps[cfg] += amp;
}

// <s|H> and <s|V> for the post-waveplate analysis basis; s = 0 records "H".
double herald_amp(int s, int pol) {
  const double r = 1.0 / std::numbers::sqrt2;
  return (s == 1 && pol == 1) ? -r : r;
}

}  // namespace

FockNlaResult fock_nla_oracle(double eta, BellState target) {
  if (eta < 0.0 || eta > 1.0) throw DomainError("efficiency outside [0,1]");

  const Vector4 tgt = bell_vector(target);
  const Vector4 anc = bell_vector(BellState::PhiPlus);

  struct Branch {
    double weight;
    Amplitudes amps;
  };
  std::vector<Branch> branches;

  if (eta > 0.0) {
    Branch b{eta, {}};
    for (int a0 = 0; a0 < 2; ++a0)
      for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1)
          for (int b2 = 0; b2 < 2; ++b2) {
            const Complex amp = tgt(2 * a0 + b0) * anc(2 * b1 + b2);
            if (amp != Complex(0, 0)) route(b.amps, amp, a0, b0, b1, b2);
          }
    branches.push_back(std::move(b));
  }
  if (eta < 1.0) {
    for (int a0 = 0; a0 < 2; ++a0) {
      Branch b{(1.0 - eta) / 2.0, {}};
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) {
          const Complex amp = anc(2 * b1 + b2);
          if (amp != Complex(0, 0)) route(b.amps, amp, a0, -1, b1, b2);
        }
      branches.push_back(std::move(b));
    }
  }

  Matrix4 rho_cond = Matrix4::Zero();
  double p_success = 0.0;
  const Matrix4 flip_out = kron(Matrix2::Identity(), (Matrix2() << 1, 0, 0, -1).finished());

  for (const auto& branch : branches) {
    double norm = 0.0;
    for (const auto& [cfg, amp] : branch.amps) norm += std::norm(amp);
    if (std::abs(norm - 1.0) > 1e-12)
      throw DomainError("amplitude norm not conserved through the network");

    for (int s1 = 0; s1 < 2; ++s1) {
      for (int s2 = 0; s2 < 2; ++s2) {
        Vector4 cond = Vector4::Zero();
        for (const auto& [cfg, amp] : branch.amps) {
          if (cfg.o1h + cfg.o1v != 1 || cfg.o2h + cfg.o2v != 1) continue;
          const int x = cfg.o1v;  // station-1 photon polarization
          const int y = cfg.o2v;
          cond(2 * cfg.a0 + cfg.out) += amp * herald_amp(s1, x) * herald_amp(s2, y);
        }
        const double prob = cond.squaredNorm();
        if (prob == 0.0) continue;
        Matrix4 rho = cond * cond.adjoint();
        if (s1 != s2) rho = flip_out * rho * flip_out.adjoint();  // feed-forward
        rho_cond += branch.weight * rho;
        p_success += branch.weight * prob;
      }
    }
  }

  FockNlaResult res;
  res.p_success = p_success;
  if (p_success > 0.0) {
    rho_cond /= p_success;
    res.fidelity = (tgt.adjoint() * rho_cond * tgt).value().real();
  }
  return res;
}

}  // namespace diqsdc
