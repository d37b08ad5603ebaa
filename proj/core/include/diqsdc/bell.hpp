#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>

namespace diqsdc {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector2 = Eigen::Vector2cd;
using Vector4 = Eigen::Vector4cd;

// Two-photon basis ordering is {HH, HV, VH, VV}; the first letter is the
// check photon (transmitted in round one), the second the message photon.
// |H> = (1,0)^T, |V> = (0,1)^T.

enum class BellState : std::uint8_t { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<BellState, 4> kAllBellStates = {
    BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus};

/// Two classical bits; value 0b00..0b11.
struct MessageDibit {
  std::uint8_t bits = 0;
  friend bool operator==(MessageDibit, MessageDibit) = default;
};

/// Fixed dibit assignment: phi+ <-> 00, phi- <-> 01, psi+ <-> 10, psi- <-> 11.
MessageDibit dibit_of(BellState b);
BellState bell_of(MessageDibit m);

const char* to_string(BellState b);

Vector4 bell_vector(BellState b);

/// Rank-1 projector of the named Bell state.
Matrix4 bell_density(BellState b);

}  // namespace diqsdc
