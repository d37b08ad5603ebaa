#pragma once

#include "diqsdc/bell.hpp"

namespace diqsdc {

inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Hermitian within kAlgebraTol, unit trace, eigenvalues >= -kPsdTol.
bool is_density_matrix(const Matrix2& rho, double tol = kAlgebraTol, double psd_tol = kPsdTol);
bool is_density_matrix(const Matrix4& rho, double tol = kAlgebraTol, double psd_tol = kPsdTol);

Matrix4 kron(const Matrix2& a, const Matrix2& b);

/// Reduced state of the message photon (check photon traced out) and vice versa.
Matrix2 trace_out_check(const Matrix4& rho);
Matrix2 trace_out_message(const Matrix4& rho);

/// Mixture over photon-presence sectors of a transmitted EPR pair:
/// both photons present, only one present, or both lost.
struct SectoredTwoPhotonState {
  double w_both = 1.0;
  Matrix4 rho_both = bell_density(BellState::PhiPlus);
  double w_check_only = 0.0;  // message photon lost
  Matrix2 rho_check = Matrix2::Identity() / 2.0;
  double w_message_only = 0.0;  // check photon lost
  Matrix2 rho_message = Matrix2::Identity() / 2.0;
  double w_vacuum = 0.0;

  static SectoredTwoPhotonState pure(BellState b);
  static SectoredTwoPhotonState from_two_qubit(const Matrix4& rho);

  /// Weights form a probability distribution and every populated sector
  /// holds a valid density matrix.
  bool valid(double tol = 1e-9) const;
};

/// Convex combination of two sectored states (sector-wise blend).
SectoredTwoPhotonState blend(const SectoredTwoPhotonState& x, double wx,
                             const SectoredTwoPhotonState& y, double wy);

}  // namespace diqsdc
