#include "sphsolve/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace sphsolve {

namespace {

// Repeated squaring of a square matrix with per-squaring normalization by the
// largest row norm; accumulates the log of the removed scale so actual column
// norms stay recoverable in log space. Returns the number of squarings done.
int normalized_squaring(Mat& A, double& log_scale, int squarings,
                        double stagnation_tol) {
  int done = 0;
  for (int s = 0; s < squarings; ++s) {
    Mat A2 = A * A;
    double norm = A2.rowwise().norm().maxCoeff();
    if (!(norm > 0.0) || !std::isfinite(norm)) break;
    A2 /= norm;
    log_scale = 2.0 * log_scale + std::log(norm);
    ++done;
    if ((A2 - A).cwiseAbs().maxCoeff() < stagnation_tol) {
      A = std::move(A2);
      break;
    }
    A = std::move(A2);
  }
  return done;
}

}  // namespace

DirectionResult find_descent_direction_matrix(const Mat& hessian,
                                              const SpherePoint& x,
                                              double mu,
                                              const PowerIterConfig& cfg) {
  const int d = x.dim();
  DirectionResult res;
  Mat P = Mat::Identity(d, d) - x.coords * x.coords.transpose();
  Mat A = P * (mu * Mat::Identity(d, d) - hessian) * P;
  A = 0.5 * (A + A.transpose());

  double init_norm = A.rowwise().norm().maxCoeff();
  if (!(init_norm > 0.0)) return res;  // projected matrix vanished
  A /= init_norm;
  double log_scale = std::log(init_norm);
  res.squarings = normalized_squaring(A, log_scale, cfg.max_squarings,
                                      cfg.stagnation_tol);

  int best = -1;
  double best_rayleigh = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i) {
    double cn = A.col(i).norm();
    if (!(cn > 0.0)) continue;
    if (std::log(cn) + log_scale < cfg.column_log_floor) continue;
    Vec v = A.col(i) / cn;
    double r = v.dot(hessian * v);
    if (r < best_rayleigh) {
      best_rayleigh = r;
      best = i;
    }
  }
  if (best < 0) return res;

  Vec v = A.col(best) / A.col(best).norm();
  v -= v.dot(x.coords) * x.coords;  // re-orthogonalize against the base point
  double vn = v.norm();
  if (!(vn > 1e-300)) return res;
  v /= vn;
  res.v = v;
  res.rayleigh = v.dot(hessian * v);
  res.ok = true;
  return res;
}

DirectionResult find_descent_direction(const PolynomialSystem& sys,
                                       const SpherePoint& x,
                                       const PowerIterConfig& cfg) {
  const int d = sys.dim();
  const int p = sys.max_degree();
  const double logp = std::log(static_cast<double>(p));
  double mu = 9.0 * cfg.c1 * d * static_cast<double>(p) * p * logp;
  // formal squaring cap: matrix power e^{c(d + log p)}, i.e. c(d+log p)/log 2
  // squarings; the stagnation early-exit makes the cap rarely binding
  double cap = std::ceil(cfg.c * (d + logp) / std::log(2.0));
  PowerIterConfig local = cfg;
  local.max_squarings =
      static_cast<int>(std::min<double>(cap, cfg.max_squarings));
  if (local.max_squarings < 1) local.max_squarings = 1;
  Mat H = sys.energy_hessian(x.coords);
  return find_descent_direction_matrix(H, x, mu, local);
}

double s_max_sq(const Mat& A) {
  const int M = static_cast<int>(A.rows());
  if (A.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  Mat B = A * A.transpose();
  double loglogM = std::log2(std::log2(std::max(static_cast<double>(M), 2.0)));
  int sq = std::max(0, static_cast<int>(std::ceil(loglogM)));
  double k = std::ldexp(1.0, sq);  // 2^sq

  double norm0 = B.rowwise().norm().maxCoeff();
  if (!(norm0 > 0.0)) return 0.0;
  Mat C = B / norm0;
  double log_scale = std::log(norm0);
  normalized_squaring(C, log_scale, sq, 0.0);
  double max_col = C.colwise().norm().maxCoeff();
  return std::exp((std::log(max_col) + log_scale) / k);
}

double sigma_max_est(const Mat& A) { return std::sqrt(s_max_sq(A)); }

double s_min(const Mat& A, double kappa) {
  if (kappa < 1.0) throw std::invalid_argument("s_min: kappa must be >= 1");
  if (A.rows() > A.cols())
    throw std::invalid_argument("s_min: need rows <= cols");
  const int M = static_cast<int>(A.rows());
  double s_hat = s_max_sq(A);
  if (s_hat == 0.0) return 0.0;
  Mat B = A * A.transpose();
  Mat D = 2.0 * s_hat * Mat::Identity(M, M) - B;

  int sq = std::max(0, static_cast<int>(std::ceil(std::log2(kappa))));
  double kprime = std::ldexp(1.0, sq);

  double norm0 = D.rowwise().norm().maxCoeff();
  double S;
  if (!(norm0 > 0.0)) {
    S = 0.0;
  } else {
    Mat C = D / norm0;
    double log_scale = std::log(norm0);
    normalized_squaring(C, log_scale, sq, 0.0);
    double max_col = C.colwise().norm().maxCoeff();
    S = std::exp((std::log(max_col) + log_scale) / kprime);
  }
  double val = 2.0 * s_hat - S;
  return val > 0.0 ? std::sqrt(val) : 0.0;
}

}  // namespace sphsolve
