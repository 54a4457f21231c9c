#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sphsolve/polysys.hpp"

namespace sphsolve {

struct NewtonStepResult {
  SpherePoint next;
  Vec step;                       // v, tangent at x (zero when degenerate)
  double sigma_min_tangent = 0.0; // smallest singular value of DF(x) U_x
  bool degenerate = false;
};

struct NewtonConfig {
  double rank_tol = 1e-10;        // relative to sigma_max
  double degen_floor = 1e3 * std::numeric_limits<double>::epsilon();
  double residual_floor = 1e-14;  // stop iterating once ||F|| is below this
};

NewtonStepResult newton_step(const PolynomialSystem& sys, const SpherePoint& x,
                             const NewtonConfig& cfg = {});

struct NewtonTrajectory {
  std::vector<SpherePoint> points;    // x^0, x^1, ...
  std::vector<double> residuals;      // ||F(x^i)||
  bool hit_degenerate = false;
  bool hit_floor = false;
};

NewtonTrajectory newton_iterate(const PolynomialSystem& sys,
                                const SpherePoint& x0, int max_iters,
                                const NewtonConfig& cfg = {});

enum class CertMode { analytic, empirical };

struct CertifyConfig {
  CertMode mode = CertMode::empirical;
  int K = 8;                          // empirical Newton steps
  std::optional<double> lipschitz_L;  // analytic mode; sampled if absent
  int lipschitz_samples = 100;
  std::uint64_t lipschitz_seed = 1;
  NewtonConfig newton;
};

struct CertReport {
  bool certified = false;
  CertMode mode = CertMode::empirical;
  std::string reason;
  // analytic mode
  double B_bound = 0.0;
  double dist_surrogate = 0.0;  // 2||F|| / sigma_min(DF U); surrogate for the
                                // unknown distance to the nearest solution
  double L_used = 0.0;
  // empirical mode
  std::vector<double> residual_trace;
  std::vector<double> contraction_exponents;  // log r_{i+1} / log r_i
};

/// Approximate-solution certification at x. Analytic mode evaluates the
/// contraction bound B = 3 + (8L + 4M)/T from computable surrogates (labeled
/// heuristic-analytic in reports); empirical mode checks the doubly
/// exponential decay 2^{1-2^i} against the trajectory limit with 2x slack.
CertReport certify(const PolynomialSystem& sys, const SpherePoint& x,
                   const CertifyConfig& cfg = {});

}  // namespace sphsolve
