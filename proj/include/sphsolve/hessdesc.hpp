#pragma once

#include <optional>
#include <vector>

#include "sphsolve/newton.hpp"
#include "sphsolve/polysys.hpp"
#include "sphsolve/spectral.hpp"

namespace sphsolve {

struct HDConfig {
  double C1 = 0.002;      // step-size constant (calibrated; see README)
  double c0 = 6.0;        // energy-floor exponent p^{-c0 d}
  double C0_prime = 4.0;  // iteration-budget constant
  double A = 1.0;         // helper constant for n = floor(d - A sqrt(d log d))
  std::optional<long> max_iters;  // overrides the budget when set
  PowerIterConfig spectral;
  CertifyConfig certify;

  double energy_floor(int p_max, int d) const;
  long budget(int d, int p_max) const;
};

/// n = floor(d - A sqrt(d log d)), clamped to [1, d-1].
int underdetermined_n(int d, double A = 1.0);

struct HDStep {
  SpherePoint next{Vec::Zero(1)};
  Vec direction;  // the unit tangent direction v used for the step
  double delta = 0.0;
  int sign = 1;
  double energy_before_projection = 0.0;  // H(y), y = x - s delta v
  double energy_after = 0.0;              // H(next) <= H(y) by homogeneity
  bool direction_failed = false;
};

HDStep hd_step(const PolynomialSystem& sys, const SpherePoint& x,
               const HDConfig& cfg);

enum class HDOutcome { point, failed };

struct HDResult {
  HDOutcome outcome = HDOutcome::failed;
  SpherePoint point{Vec::Zero(1)};
  long iterations = 0;
  std::vector<double> energy_trace;       // H(x_i)
  std::vector<double> pre_projection_trace;  // H(y_i)
  std::vector<double> delta_trace;
  CertReport certification;
  std::string termination;
};

/// Curvature descent from x_0 = e_1: step along an approximate
/// minimal-curvature tangent direction with energy-adaptive size, project
/// back to the sphere, stop at the energy floor or when the budget runs out.
HDResult hd_run(const PolynomialSystem& sys, const HDConfig& cfg = {});

}  // namespace sphsolve
