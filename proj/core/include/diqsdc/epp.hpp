#pragma once

#include <cstddef>
#include <vector>

namespace diqsdc {

/// Four nonnegative weights over the Bell basis, in the order
/// phi+ (a), psi+ (b), phi- (c), psi- (d).
struct BellDiagonalState {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  static BellDiagonalState werner(double p) {
    return {(1.0 + 3.0 * p) / 4.0, (1.0 - p) / 4.0, (1.0 - p) / 4.0, (1.0 - p) / 4.0};
  }

  double fidelity() const { return a; }
  /// Werner parameter of the isotropic state with the same fidelity.
  double twirled_p() const { return (4.0 * a - 1.0) / 3.0; }
  bool valid(double tol = 1e-9) const;
};

struct PurifyResult {
  BellDiagonalState out;
  double p_success = 0.0;
};

/// One two-copy purification step (PBS selection, QND preservation, diagonal
/// measurement with both accepted classes merged under the phase-flip
/// correction). Closed form of the circuit map:
///   out  propto  (a^2+c^2, b^2+d^2, 2ac, 2bd),
///   p_success = [(a+c)^2 + (b+d)^2] / 8.
/// Werner(p) input gives p_success = (1+p^2)/16 exactly.
PurifyResult purify_step(const BellDiagonalState& s);

/// Ground-truth map: brute-force four-qubit density-matrix propagation
/// through the two-PBS network with four-mode post-selection, the QND factor
/// 1/4, diagonal-basis measurement of the sacrificed pair, and the
/// phase-flip merge of the two accepted measurement classes.
PurifyResult epp_circuit_oracle(const BellDiagonalState& s);

struct EppSchedule {
  std::size_t k = 0;
  std::vector<double> per_step_success;
  double final_fidelity = 1.0;
  double target_fidelity = 0.99;
};

/// Iterates purify_step from Werner(p), re-twirling the output to the
/// isotropic state of equal fidelity between steps, until the phi+ weight
/// reaches target_fidelity. Throws EppIneffectiveError for p <= 1/3 and
/// TargetUnreachableError when max_k steps do not suffice.
EppSchedule plan_epp(double p, double target_fidelity = 0.99, std::size_t max_k = 32);

}  // namespace diqsdc
