#pragma once

#include "diqsdc/rng.hpp"
#include "diqsdc/states.hpp"

#include <array>
#include <numbers>
#include <optional>

namespace diqsdc {

enum class Party { Alice, Bob };

/// Equatorial measurement setting. Alice draws from {A0, A1, A2}, Bob from
/// {B1, B2} during protocol runs.
struct MeasurementSetting {
  Party party;
  double phase;  // radians
};

inline constexpr std::array<double, 3> kAliceSettings = {
    std::numbers::pi / 4.0, 0.0, std::numbers::pi / 2.0};  // A0, A1, A2
inline constexpr std::array<double, 2> kBobSettings = {
    std::numbers::pi / 4.0, -std::numbers::pi / 4.0};  // B1, B2

/// Alice measures cos(t)*sx + sin(t)*sy; Bob the phase conjugate
/// cos(t)*sx - sin(t)*sy. On |phi+> this gives <ab> = cos(ta - tb).
Matrix2 observable(Party party, double phase);

/// Projector onto the +1 or -1 eigenspace of observable(party, phase).
Matrix2 outcome_projector(Party party, double phase, int outcome);

/// Exact expectation of the +-1 outcome product; missing-photon sectors
/// contribute zero correlation (inconclusive outcomes are random signs).
/// theta_a is Alice's setting on the message photon, theta_b Bob's on the check photon.
double correlator(const SectoredTwoPhotonState& s, double theta_a, double theta_b);

enum class BellAnalysisMode { Complete, LinearOptics };

struct BellAnalysisOutcome {
  enum class Kind { Identified, Unreadable, PhotonMissing };
  Kind kind = Kind::PhotonMissing;
  std::optional<BellState> state;  // set iff Identified
};

/// Bell-basis outcome probabilities of a two-qubit density matrix.
std::array<double, 4> bell_distribution(const Matrix4& rho);

/// Samples a Bell-state analysis outcome. LinearOptics identifies only the
/// psi pair {psi+, psi-}; phi outcomes are reported Unreadable.
BellAnalysisOutcome bell_analysis(const SectoredTwoPhotonState& s, BellAnalysisMode mode, Rng& rng);

/// Pauli encoding unitary U_m acting on the message photon:
/// U0 = I, U1 = sz, U2 = sx, U3 = |H><V| - |V><H|.
Matrix2 encoding_unitary(MessageDibit m);

/// Applies U_m to the message photon wherever it is present; sector weights
/// are unchanged. Maps the Bell basis to itself as a permutation.
SectoredTwoPhotonState apply_encoding(const SectoredTwoPhotonState& s, MessageDibit m);

}  // namespace diqsdc
