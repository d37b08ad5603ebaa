#include "diqsdc/epp.hpp"

#include "diqsdc/bell.hpp"
#include "diqsdc/errors.hpp"
#include "diqsdc/measurement.hpp"
#include "diqsdc/states.hpp"

#include <cmath>
#include <string>

namespace diqsdc {

bool BellDiagonalState::valid(double tol) const {
  if (a < -tol || b < -tol || c < -tol || d < -tol) return false;
  return std::abs(a + b + c + d - 1.0) <= tol;
}

PurifyResult purify_step(const BellDiagonalState& s) {
  if (!s.valid()) throw MalformedStateError("Bell-diagonal weights must be a distribution");
  const double t = (s.a + s.c) * (s.a + s.c) + (s.b + s.d) * (s.b + s.d);
  if (t <= 0.0) throw DegenerateStateError("purification never succeeds on this input");
  PurifyResult r;
  r.out = {(s.a * s.a + s.c * s.c) / t, (s.b * s.b + s.d * s.d) / t, 2.0 * s.a * s.c / t,
           2.0 * s.b * s.d / t};
  r.p_success = t / 8.0;
  return r;
}

namespace {

using Matrix16 = Eigen::Matrix<Complex, 16, 16>;

Matrix4 bell_diagonal_density(const BellDiagonalState& s) {
  return s.a * bell_density(BellState::PhiPlus) + s.b * bell_density(BellState::PsiPlus) +
         s.c * bell_density(BellState::PhiMinus) + s.d * bell_density(BellState::PsiMinus);
}

// <s|H>, <s|V> in the rotated analysis basis; s = 0 is "+".
double diag_amp(int s, int pol) {
  const double r = 1.0 / std::numbers::sqrt2;
  return (s == 1 && pol == 1) ? -r : r;
}

}  // namespace

PurifyResult epp_circuit_oracle(const BellDiagonalState& s) {
  if (!s.valid()) throw MalformedStateError("Bell-diagonal weights must be a distribution");

  // Qubit order (x1, y1, x2, y2): kept copy on Alice/Bob, sacrificed copy on
  // Alice/Bob. Basis index 8*x1 + 4*y1 + 2*x2 + y2.
  const Matrix4 rho_copy = bell_diagonal_density(s);
  Matrix16 rho = Matrix16::Zero();
  for (int i1 = 0; i1 < 4; ++i1)
    for (int j1 = 0; j1 < 4; ++j1)
      for (int i2 = 0; i2 < 4; ++i2)
        for (int j2 = 0; j2 < 4; ++j2)
          rho(4 * i1 + i2, 4 * j1 + j2) = rho_copy(i1, j1) * rho_copy(i2, j2);

  // Four-mode coincidence behind the two PBSs: each party's photons must
  // share a polarization to exit on distinct ports.
  for (int i = 0; i < 16; ++i) {
    const int x1 = (i >> 3) & 1, y1 = (i >> 2) & 1, x2 = (i >> 1) & 1, y2 = i & 1;
    if (x1 == x2 && y1 == y2) continue;
    rho.row(i).setZero();
    rho.col(i).setZero();
  }

  const Matrix2 sz = (Matrix2() << 1, 0, 0, -1).finished();
  const Matrix4 flip_kept = kron(sz, Matrix2::Identity());

  Matrix4 acc = Matrix4::Zero();
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      // Diagonal-basis readout of the sacrificed copy.
      Matrix4 kept = Matrix4::Zero();
      for (int i1 = 0; i1 < 4; ++i1)
        for (int j1 = 0; j1 < 4; ++j1)
          for (int i2 = 0; i2 < 4; ++i2)
            for (int j2 = 0; j2 < 4; ++j2) {
              const double m = diag_amp(s1, (i2 >> 1) & 1) * diag_amp(s2, i2 & 1);
              const double mc = diag_amp(s1, (j2 >> 1) & 1) * diag_amp(s2, j2 & 1);
              kept(i1, j1) += rho(4 * i1 + i2, 4 * j1 + j2) * m * mc;
            }
      if (s1 != s2) kept = flip_kept * kept * flip_kept.adjoint();
      acc += kept;
    }
  }
  acc *= 0.25;  // nondestructive total-photon-number check

  PurifyResult r;
  r.p_success = acc.trace().real();
  if (r.p_success <= 0.0) throw DegenerateStateError("purification never succeeds on this input");
  acc /= r.p_success;
  const auto probs = bell_distribution(acc);
  r.out = {probs[static_cast<int>(BellState::PhiPlus)], probs[static_cast<int>(BellState::PsiPlus)],
           probs[static_cast<int>(BellState::PhiMinus)],
           probs[static_cast<int>(BellState::PsiMinus)]};
  return r;
}

EppSchedule plan_epp(double p, double target_fidelity, std::size_t max_k) {
  if (p < 0.0 || p > 1.0) throw DomainError("Werner parameter outside [0,1]");
  if (target_fidelity <= 0.0 || target_fidelity >= 1.0)
    throw DomainError("target fidelity must lie in (0,1)");

  EppSchedule plan;
  plan.target_fidelity = target_fidelity;
  BellDiagonalState state = BellDiagonalState::werner(p);
  plan.final_fidelity = state.fidelity();
  if (plan.final_fidelity >= target_fidelity) return plan;
  if (p <= 1.0 / 3.0 + 1e-12)
    throw EppIneffectiveError("fidelity at or below 1/2 cannot be purified");

  while (plan.final_fidelity < target_fidelity) {
    if (plan.k >= max_k)
      throw TargetUnreachableError("fidelity " + std::to_string(target_fidelity) +
                                   " not reached within " + std::to_string(max_k) + " rounds");
    const PurifyResult step = purify_step(state);
    plan.per_step_success.push_back(step.p_success);
    ++plan.k;
    // Re-randomize to the isotropic state of equal fidelity before the next
    // round; without this the phi- weight grows and the iteration stalls
    // just below high targets.
    state = BellDiagonalState::werner(step.out.twirled_p());
    plan.final_fidelity = state.fidelity();
  }
  return plan;
}

}  // namespace diqsdc
