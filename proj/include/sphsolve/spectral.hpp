#pragma once

#include <optional>

#include "sphsolve/polysys.hpp"

namespace sphsolve {

struct PowerIterConfig {
  double c = 2.0;            // loop-cap exponent for the squaring counter
  int max_squarings = 64;    // hard cap on squarings (power reached = 2^this)
  bool normalize_each_squaring = true;
  double c1 = 1.0;           // spectral-shift constant in mu = 9*c1*d*p^2*log p
  double stagnation_tol = 1e-14;
  double column_log_floor = -690.0;  // ~log(1e-300)
};

struct DirectionResult {
  Vec v;           // unit vector orthogonal to x (valid iff ok)
  double rayleigh = 0.0;  // <grad^2 H(x), v v^T>
  bool ok = false;
  int squarings = 0;
};

/// Approximate minimal-curvature tangent direction at x: shift-and-square
/// power iteration on P (mu I - grad^2 H) P with P the tangent projector,
/// returning the column whose Rayleigh quotient against grad^2 H is smallest.
DirectionResult find_descent_direction(const PolynomialSystem& sys,
                                       const SpherePoint& x,
                                       const PowerIterConfig& cfg = {});

/// Same routine applied to an explicit symmetric matrix and base point;
/// exposed for testing against hand-built quadratics.
DirectionResult find_descent_direction_matrix(const Mat& hessian,
                                              const SpherePoint& x,
                                              double mu,
                                              const PowerIterConfig& cfg = {});

/// Power-of-two power iteration estimate of lambda_max(A A^T), i.e. the
/// squared top singular value of A. Estimate s_hat satisfies
/// lambda_max / sqrt(2) <= s_hat <= lambda_max (M^{-1/(2k)} lower factor).
double s_max_sq(const Mat& A);

/// sqrt of the above: top singular value estimate.
double sigma_max_est(const Mat& A);

/// Minimal singular value estimate of A (rows <= cols) via kappa rounds of
/// power iteration on D = 2 s_hat I - A A^T. Biased upward: the return value
/// is >= sigma_min(A) up to rounding, with additive error shrinking in kappa.
double s_min(const Mat& A, double kappa);

}  // namespace sphsolve
