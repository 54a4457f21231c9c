#pragma once

#include <string>
#include <vector>

#include "sphsolve/polysys.hpp"

namespace sphsolve {

/// Brute-force root sets and statistical checks, deliberately independent of
/// the solver's own numerical kernels. Desk scale only: root scans refuse
/// d > 3 and the dense decompositions refuse matrices larger than 200.

struct OracleRootSet {
  std::vector<SpherePoint> roots;
  std::string method;
  double resolution = 0.0;
  double min_root_gap = 0.0;  // smallest pairwise distance found (0 if < 2 roots)
};

/// d=2, n=1: evaluate F on a uniform angle grid, bisect every sign change to
/// 1e-13, deduplicate. Finds all roots when the grid is finer than the
/// minimal root gap.
OracleRootSet circle_roots(const PolynomialSystem& sys, int grid_size = 1000000);

/// d=3, n=2: dense latitude-longitude scan of ||F|| with Gauss-Newton
/// polishing of local minima (Eigen least squares, not the solver's kernels).
OracleRootSet sphere_scan_roots(const PolynomialSystem& sys,
                                double resolution = 0.01);

struct EigenPairs {
  Vec values;  // ascending
  Mat vectors;
};

/// Dense symmetric eigendecomposition (Eigen), sizes <= 200, finite entries.
EigenPairs dense_symmetric_eigen(const Mat& M);

struct DenseSvd {
  Mat U;
  Vec sigma;  // descending
  Mat V;
};

/// Dense singular decomposition (Eigen), sizes <= 200, finite entries.
DenseSvd dense_svd(const Mat& A);

struct CovarianceReport {
  struct Entry {
    double overlap;     // <x1, x2>
    double target;      // overlap^p
    double empirical;   // mean of F(x1) F(x2)
    double std_error;
  };
  std::vector<Entry> entries;
  int samples = 0;
};

/// Monte Carlo check of the covariance law E[F(x1)F(x2)] = <x1,x2>^p for
/// fresh degree-p samples in dimension d.
CovarianceReport mc_covariance(int d, int p, const std::vector<double>& overlaps,
                               int samples, std::uint64_t seed);

struct LipschitzReport {
  double sup_f = 0.0;        // max ||F(x)|| observed
  double sup_df_op = 0.0;    // max ||DF(x)||_op observed
  double lip_f = 0.0;        // max ||F(x)-F(y)|| / ||x-y|| over sampled pairs
  int samples = 0;
};

/// Sampled lower bounds on the sup norms / Lipschitz constants of a system
/// over the sphere; sanity-checks the L parameter fed to the grid search.
LipschitzReport mc_lipschitz(const PolynomialSystem& sys, int samples,
                             std::uint64_t seed);

/// Expected number of sphere roots of a random system with the given degrees
/// (n = d-1): 2 sqrt(prod p_i), evaluated from the Gamma-function closed form.
double kac_rice_mean(int d, const std::vector<int>& degrees);

}  // namespace sphsolve
