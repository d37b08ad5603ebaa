#include "diqsdc/bell.hpp"

#include "diqsdc/errors.hpp"

#include <numbers>

namespace diqsdc {

MessageDibit dibit_of(BellState b) { return MessageDibit{static_cast<std::uint8_t>(b)}; }

BellState bell_of(MessageDibit m) {
  if (m.bits > 3) throw DomainError("dibit value out of range");
  return static_cast<BellState>(m.bits);
}

const char* to_string(BellState b) {
  switch (b) {
    case BellState::PhiPlus: return "phi+";
    case BellState::PhiMinus: return "phi-";
    case BellState::PsiPlus: return "psi+";
    case BellState::PsiMinus: return "psi-";
  }
  return "?";
}

Vector4 bell_vector(BellState b) {
  const double r = 1.0 / std::numbers::sqrt2;
  Vector4 v = Vector4::Zero();
  switch (b) {
    case BellState::PhiPlus:
      v(0) = r; v(3) = r;  // (|HH> + |VV>)/sqrt(2)
      break;
    case BellState::PhiMinus:
      v(0) = r; v(3) = -r;
      break;
    case BellState::PsiPlus:
      v(1) = r; v(2) = r;  // (|HV> + |VH>)/sqrt(2)
      break;
    case BellState::PsiMinus:
      v(1) = r; v(2) = -r;
      break;
  }
  return v;
}

Matrix4 bell_density(BellState b) {
  const Vector4 v = bell_vector(b);
  return v * v.adjoint();
}

}  // namespace diqsdc
