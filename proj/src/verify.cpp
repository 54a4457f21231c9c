#include "sphsolve/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace sphsolve {

namespace {

void require_finite(const Mat& M, const char* who) {
  if (!M.allFinite())
    throw std::invalid_argument(std::string(who) + ": non-finite entries");
}

double min_pairwise_gap(const std::vector<SpherePoint>& pts) {
  if (pts.size() < 2) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::min(best, (pts[i].coords - pts[j].coords).norm());
  return best;
}

}  // namespace

OracleRootSet circle_roots(const PolynomialSystem& sys, int grid_size) {
  if (sys.dim() != 2 || sys.num_polys() != 1)
    throw std::invalid_argument("circle_roots: requires d=2, n=1");
  if (grid_size < 16)
    throw std::invalid_argument("circle_roots: grid too coarse");
  auto g = [&](double theta) {
    Vec x(2);
    x[0] = std::cos(theta);
    x[1] = std::sin(theta);
    return sys.evaluate(x)[0];
  };
  const double two_pi = 2.0 * M_PI;
  const double h = two_pi / grid_size;
  OracleRootSet out;
  out.method = "angle-scan";
  out.resolution = h;
  std::vector<double> angles;
  double prev = g(0.0);
  for (int i = 1; i <= grid_size; ++i) {
    double theta = i * h;
    double cur = g(theta);
    if (prev == 0.0) {
      angles.push_back((i - 1) * h);
    } else if (prev * cur < 0.0) {
      double lo = (i - 1) * h, hi = theta, flo = prev;
      while (hi - lo > 1e-13) {
        double mid = 0.5 * (lo + hi);
        double fm = g(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (flo * fm < 0.0)
          hi = mid;
        else {
          lo = mid;
          flo = fm;
        }
      }
      angles.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  // deduplicate modulo 2 pi
  std::sort(angles.begin(), angles.end());
  for (double a : angles) {
    if (!out.roots.empty()) {
      double last = std::atan2(out.roots.back().coords[1],
                               out.roots.back().coords[0]);
      double diff = std::abs(std::remainder(a - last, two_pi));
      if (diff < 2.0 * h) continue;
    }
    Vec x(2);
    x[0] = std::cos(a);
    x[1] = std::sin(a);
    out.roots.emplace_back(x);
  }
  if (out.roots.size() >= 2) {
    double first = std::atan2(out.roots.front().coords[1],
                              out.roots.front().coords[0]);
    double last = std::atan2(out.roots.back().coords[1],
                             out.roots.back().coords[0]);
    if (std::abs(std::remainder(first - last, two_pi)) < 2.0 * h)
      out.roots.pop_back();
  }
  out.min_root_gap = min_pairwise_gap(out.roots);
  return out;
}

namespace {

// Gauss-Newton on the sphere via Eigen's QR least squares; independent from
// the solver's Jacobi-rotation kernels.
bool polish_root(const PolynomialSystem& sys, Vec& x, double tol) {
  for (int it = 0; it < 60; ++it) {
    Vec f = sys.evaluate(x);
    if (f.norm() <= tol) return true;
    Mat U = tangent_basis(SpherePoint(x)).columns;
    Mat M = sys.jacobian(x) * U;
    Vec t = M.colPivHouseholderQr().solve(-f);
    if (!t.allFinite() || t.norm() > 1.0) return false;
    x = (x + U * t).normalized();
  }
  return sys.evaluate(x).norm() <= tol;
}

}  // namespace

OracleRootSet sphere_scan_roots(const PolynomialSystem& sys,
                                double resolution) {
  if (sys.dim() != 3 || sys.num_polys() != 2)
    throw std::invalid_argument("sphere_scan_roots: requires d=3, n=2");
  if (resolution <= 0 || resolution > 0.3)
    throw std::invalid_argument("sphere_scan_roots: bad resolution");
  const int ntheta = static_cast<int>(std::ceil(M_PI / resolution)) + 1;
  const int nphi = static_cast<int>(std::ceil(2.0 * M_PI / resolution));
  Mat vals(ntheta, nphi);
  auto point = [&](int i, int j) {
    double theta = M_PI * i / (ntheta - 1);
    double phi = 2.0 * M_PI * j / nphi;
    Vec x(3);
    x[0] = std::sin(theta) * std::cos(phi);
    x[1] = std::sin(theta) * std::sin(phi);
    x[2] = std::cos(theta);
    return x;
  };
  for (int i = 0; i < ntheta; ++i)
    for (int j = 0; j < nphi; ++j) vals(i, j) = sys.evaluate(point(i, j)).norm();

  OracleRootSet out;
  out.method = "sphere-scan";
  out.resolution = resolution;
  const double polish_tol = 1e-10;
  const double coarse = 1.0;  // only polish grid minima below this
  for (int i = 0; i < ntheta; ++i) {
    for (int j = 0; j < nphi; ++j) {
      double v = vals(i, j);
      if (v > coarse) continue;
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          int ii = i + di;
          if (ii < 0 || ii >= ntheta) continue;
          int jj = (j + dj + nphi) % nphi;
          if (vals(ii, jj) < v) {
            is_min = false;
            break;
          }
        }
      }
      if (!is_min) continue;
      Vec x = point(i, j);
      if (!polish_root(sys, x, polish_tol)) continue;
      bool dup = false;
      for (const auto& r : out.roots)
        if ((r.coords - x).norm() <= resolution) {
          dup = true;
          break;
        }
      if (!dup) out.roots.emplace_back(x);
    }
  }
  out.min_root_gap = min_pairwise_gap(out.roots);
  return out;
}

EigenPairs dense_symmetric_eigen(const Mat& M) {
  if (M.rows() != M.cols())
    throw std::invalid_argument("dense_symmetric_eigen: not square");
  if (M.rows() > 200)
    throw std::invalid_argument("dense_symmetric_eigen: desk scale only (<=200)");
  require_finite(M, "dense_symmetric_eigen");
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  return {es.eigenvalues(), es.eigenvectors()};
}

DenseSvd dense_svd(const Mat& A) {
  if (A.rows() > 200 || A.cols() > 200)
    throw std::invalid_argument("dense_svd: desk scale only (<=200)");
  require_finite(A, "dense_svd");
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

CovarianceReport mc_covariance(int d, int p, const std::vector<double>& overlaps,
                               int samples, std::uint64_t seed) {
  if (samples < 100)
    throw std::invalid_argument("mc_covariance: need at least 100 samples");
  if (d < 2) throw std::invalid_argument("mc_covariance: need d >= 2");
  CovarianceReport rep;
  rep.samples = samples;
  for (double t : overlaps) {
    if (t < -1.0 || t > 1.0)
      throw std::invalid_argument("mc_covariance: overlap outside [-1,1]");
    Vec x1 = Vec::Zero(d), x2 = Vec::Zero(d);
    x1[0] = 1.0;
    x2[0] = t;
    x2[1] = std::sqrt(std::max(0.0, 1.0 - t * t));
    double sum = 0.0, sumsq = 0.0;
    for (int s = 0; s < samples; ++s) {
      PolynomialSystem sys =
          sample_system(d, {p}, seed * 1000003ULL + 7919ULL * s);
      double v = sys.evaluate(x1)[0] * sys.evaluate(x2)[0];
      sum += v;
      sumsq += v * v;
    }
    double mean = sum / samples;
    double var = std::max(0.0, sumsq / samples - mean * mean);
    rep.entries.push_back(
        {t, std::pow(t, p), mean, std::sqrt(var / samples)});
  }
  return rep;
}

LipschitzReport mc_lipschitz(const PolynomialSystem& sys, int samples,
                             std::uint64_t seed) {
  if (samples < 100)
    throw std::invalid_argument("mc_lipschitz: need at least 100 samples");
  GaussianRng rng(seed);
  const int d = sys.dim();
  LipschitzReport rep;
  rep.samples = samples;
  Vec prev;
  Vec fprev;
  for (int s = 0; s < samples; ++s) {
    Vec x(d);
    for (int j = 0; j < d; ++j) x[j] = rng.normal();
    x.normalize();
    Vec f = sys.evaluate(x);
    rep.sup_f = std::max(rep.sup_f, f.norm());
    Eigen::JacobiSVD<Mat> svd(sys.jacobian(x));
    rep.sup_df_op = std::max(rep.sup_df_op, svd.singularValues()[0]);
    if (s > 0) {
      double dist = (x - prev).norm();
      if (dist > 1e-8)
        rep.lip_f = std::max(rep.lip_f, (f - fprev).norm() / dist);
    }
    prev = x;
    fprev = f;
  }
  return rep;
}

double kac_rice_mean(int d, const std::vector<int>& degrees) {
  const int n = static_cast<int>(degrees.size());
  if (n != d - 1)
    throw std::invalid_argument("kac_rice_mean: requires n = d-1 degrees");
  // Vol(S^{d-1}) prod sqrt(p_i/2pi) * 2^{n/2} Gamma(d/2) / Gamma((d-n)/2),
  // assembled in log space; simplifies to 2 sqrt(prod p_i) at n = d-1
  double log_val = std::log(2.0) + (d / 2.0) * std::log(M_PI) -
                   std::lgamma(d / 2.0);
  for (int p : degrees) log_val += 0.5 * std::log(p / (2.0 * M_PI));
  log_val += (n / 2.0) * std::log(2.0) + std::lgamma(d / 2.0) -
             std::lgamma((d - n) / 2.0);
  return std::exp(log_val);
}

}  // namespace sphsolve
