#include "sphsolve/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sphsolve {

namespace {

// One-sided Jacobi on a tall matrix B (m >= n): rotate column pairs until all
// are mutually orthogonal, so B V = W with orthogonal columns w_j = s_j u_j.
void one_sided_jacobi(Mat& W, Mat& V) {
  const int n = static_cast<int>(W.cols());
  const double tol = 1e-15;
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = W.col(p).squaredNorm();
        double aqq = W.col(q).squaredNorm();
        double apq = W.col(p).dot(W.col(q));
        if (std::abs(apq) <= tol * std::sqrt(app * aqq)) continue;
        rotated = true;
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        Vec wp = W.col(p);
        W.col(p) = c * wp - s * W.col(q);
        W.col(q) = s * wp + c * W.col(q);
        Vec vp = V.col(p);
        V.col(p) = c * vp - s * V.col(q);
        V.col(q) = s * vp + c * V.col(q);
      }
    }
    if (!rotated) break;
  }
}

}  // namespace

SvdResult jacobi_svd(const Mat& A) {
  const int m = static_cast<int>(A.rows());
  const int l = static_cast<int>(A.cols());
  const bool transposed = m < l;
  Mat W = transposed ? Mat(A.transpose()) : A;  // tall
  const int rows = static_cast<int>(W.rows());
  const int cols = static_cast<int>(W.cols());
  Mat V = Mat::Identity(cols, cols);
  one_sided_jacobi(W, V);

  std::vector<int> order(cols);
  std::iota(order.begin(), order.end(), 0);
  Vec norms(cols);
  for (int j = 0; j < cols; ++j) norms[j] = W.col(j).norm();
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return norms[a] > norms[b]; });

  Mat Usorted(rows, cols), Vsorted(cols, cols);
  Vec sigma(cols);
  for (int j = 0; j < cols; ++j) {
    int src = order[j];
    sigma[j] = norms[src];
    if (norms[src] > 0.0)
      Usorted.col(j) = W.col(src) / norms[src];
    else
      Usorted.col(j).setZero();
    Vsorted.col(j) = V.col(src);
  }
  if (transposed) return {Vsorted, sigma, Usorted};
  return {Usorted, sigma, Vsorted};
}

Vec pinv_solve(const SvdResult& svd, const Vec& b, double rank_tol) {
  const double cutoff = rank_tol * (svd.sigma.size() ? svd.sigma[0] : 0.0);
  Vec y = Vec::Zero(svd.V.rows());
  for (int j = 0; j < svd.sigma.size(); ++j) {
    if (svd.sigma[j] <= cutoff || svd.sigma[j] == 0.0) continue;
    y += (svd.U.col(j).dot(b) / svd.sigma[j]) * svd.V.col(j);
  }
  return y;
}

}  // namespace sphsolve
