#pragma once

#include "diqsdc/epp.hpp"
#include "diqsdc/rng.hpp"
#include "diqsdc/states.hpp"

#include <cmath>

namespace testutil {

using namespace diqsdc;

// Haar-ish random density matrix from a Ginibre draw.
inline Matrix4 random_density4(Rng& rng) {
  Matrix4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      g(i, j) = Complex(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
  Matrix4 rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline BellDiagonalState random_bell_diagonal(Rng& rng) {
  double w[4];
  double sum = 0.0;
  for (double& x : w) {
    x = rng.next_double() + 1e-6;
    sum += x;
  }
  return {w[0] / sum, w[1] / sum, w[2] / sum, w[3] / sum};
}

inline bool within_sigma(double estimate, double truth, double stderr_, double n_sigma) {
  return std::abs(estimate - truth) <= n_sigma * stderr_;
}

inline double binomial_stderr(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace testutil
