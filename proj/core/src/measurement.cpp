#include "diqsdc/measurement.hpp"

#include "diqsdc/errors.hpp"

#include <cmath>

namespace diqsdc {

namespace {

const Matrix2& sigma_x() {
  static const Matrix2 m = (Matrix2() << 0, 1, 1, 0).finished();
  return m;
}

const Matrix2& sigma_y() {
  static const Matrix2 m = (Matrix2() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  return m;
}

const Matrix2& sigma_z() {
  static const Matrix2 m = (Matrix2() << 1, 0, 0, -1).finished();
  return m;
}

}  // namespace

Matrix2 observable(Party party, double phase) {
  const double sign = party == Party::Alice ? 1.0 : -1.0;
  return std::cos(phase) * sigma_x() + sign * std::sin(phase) * sigma_y();
}

Matrix2 outcome_projector(Party party, double phase, int outcome) {
  if (outcome != 1 && outcome != -1) throw DomainError("outcome must be +1 or -1");
  return 0.5 * (Matrix2::Identity() + static_cast<double>(outcome) * observable(party, phase));
}

double correlator(const SectoredTwoPhotonState& s, double theta_a, double theta_b) {
  // Equatorial observables are traceless, so only the both-photon sector
  // correlates; a missing photon's random outcome averages to zero.
  const Matrix4 joint = kron(observable(Party::Bob, theta_b), observable(Party::Alice, theta_a));
  return s.w_both * (s.rho_both * joint).trace().real();
}

std::array<double, 4> bell_distribution(const Matrix4& rho) {
  std::array<double, 4> p{};
  for (BellState b : kAllBellStates) {
    const Vector4 v = bell_vector(b);
    p[static_cast<int>(b)] = std::max(0.0, (v.adjoint() * rho * v).value().real());
  }
  return p;
}

BellAnalysisOutcome bell_analysis(const SectoredTwoPhotonState& s, BellAnalysisMode mode,
                                  Rng& rng) {
  const double u = rng.next_double();
  if (u >= s.w_both) return {BellAnalysisOutcome::Kind::PhotonMissing, std::nullopt};

  const auto probs = bell_distribution(s.rho_both);
  double v = rng.next_double();
  int idx = 3;
  for (int i = 0; i < 3; ++i) {
    if (v < probs[i]) {
      idx = i;
      break;
    }
    v -= probs[i];
  }
  const BellState outcome = static_cast<BellState>(idx);
  if (mode == BellAnalysisMode::LinearOptics &&
      (outcome == BellState::PhiPlus || outcome == BellState::PhiMinus)) {
    return {BellAnalysisOutcome::Kind::Unreadable, std::nullopt};
  }
  return {BellAnalysisOutcome::Kind::Identified, outcome};
}

Matrix2 encoding_unitary(MessageDibit m) {
  switch (m.bits) {
    case 0: return Matrix2::Identity();
    case 1: return sigma_z();
    case 2: return sigma_x();
    case 3: return (Matrix2() << 0, 1, -1, 0).finished();  // |H><V| - |V><H|
  }
  throw DomainError("dibit value out of range");
}

SectoredTwoPhotonState apply_encoding(const SectoredTwoPhotonState& s, MessageDibit m) {
  const Matrix2 u = encoding_unitary(m);
  const Matrix4 u_msg = kron(Matrix2::Identity(), u);
  SectoredTwoPhotonState out = s;
  out.rho_both = u_msg * s.rho_both * u_msg.adjoint();
  out.rho_message = u * s.rho_message * u.adjoint();
  return out;
}

}  // namespace diqsdc
