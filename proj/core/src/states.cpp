#include "diqsdc/states.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace diqsdc {

namespace {

template <typename M>
bool density_checks(const M& rho, double tol, double psd_tol) {
  if (!rho.allFinite()) return false;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho.trace().real() - 1.0) > tol) return false;
  if (std::abs(rho.trace().imag()) > tol) return false;
  Eigen::SelfAdjointEigenSolver<M> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -psd_tol;
}

}  // namespace

bool is_density_matrix(const Matrix2& rho, double tol, double psd_tol) {
  return density_checks(rho, tol, psd_tol);
}

bool is_density_matrix(const Matrix4& rho, double tol, double psd_tol) {
  return density_checks(rho, tol, psd_tol);
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Matrix2 trace_out_check(const Matrix4& rho) {
  // basis index = 2*check + message
  Matrix2 out;
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      out(m, n) = rho(m, n) + rho(2 + m, 2 + n);
  return out;
}

Matrix2 trace_out_message(const Matrix4& rho) {
  Matrix2 out;
  for (int c = 0; c < 2; ++c)
    for (int k = 0; k < 2; ++k)
      out(c, k) = rho(2 * c, 2 * k) + rho(2 * c + 1, 2 * k + 1);
  return out;
}

SectoredTwoPhotonState SectoredTwoPhotonState::pure(BellState b) {
  SectoredTwoPhotonState s;
  s.rho_both = bell_density(b);
  return s;
}

SectoredTwoPhotonState SectoredTwoPhotonState::from_two_qubit(const Matrix4& rho) {
  SectoredTwoPhotonState s;
  s.rho_both = rho;
  return s;
}

bool SectoredTwoPhotonState::valid(double tol) const {
  const double weights[] = {w_both, w_check_only, w_message_only, w_vacuum};
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= -tol)) return false;
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol) return false;
  if (w_both > tol && !is_density_matrix(rho_both, 1e-9, kPsdTol)) return false;
  if (w_check_only > tol && !is_density_matrix(rho_check, 1e-9, kPsdTol)) return false;
  if (w_message_only > tol && !is_density_matrix(rho_message, 1e-9, kPsdTol)) return false;
  return true;
}

SectoredTwoPhotonState blend(const SectoredTwoPhotonState& x, double wx,
                             const SectoredTwoPhotonState& y, double wy) {
  SectoredTwoPhotonState out;
  out.w_both = wx * x.w_both + wy * y.w_both;
  out.w_check_only = wx * x.w_check_only + wy * y.w_check_only;
  out.w_message_only = wx * x.w_message_only + wy * y.w_message_only;
  out.w_vacuum = wx * x.w_vacuum + wy * y.w_vacuum;
  out.rho_both = out.w_both > 0
                     ? Matrix4((wx * x.w_both * x.rho_both + wy * y.w_both * y.rho_both) / out.w_both)
                     : x.rho_both;
  out.rho_check = out.w_check_only > 0
                      ? Matrix2((wx * x.w_check_only * x.rho_check + wy * y.w_check_only * y.rho_check) /
                                out.w_check_only)
                      : x.rho_check;
  out.rho_message = out.w_message_only > 0
                        ? Matrix2((wx * x.w_message_only * x.rho_message +
                                   wy * y.w_message_only * y.rho_message) /
                                  out.w_message_only)
                        : x.rho_message;
  return out;
}

}  // namespace diqsdc
