#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sphsolve/newton.hpp"
#include "sphsolve/polysys.hpp"

namespace sphsolve {

/// Dyadic cube corner + [0, 2^{-k}]^d inside [-1,1]^d. Level k = -1 is the
/// single root block [-1,1]^d with corner (-1,...,-1).
struct GridBlock {
  int k = -1;
  Vec corner;

  double side() const { return std::ldexp(1.0, -k); }
  /// The 2^d sub-blocks at level k+1, in lexicographic order of the
  /// {0,1}^d corner offsets.
  std::vector<GridBlock> children() const;
};

struct MSSParams {
  double L = 0.0;   // Lipschitz pruning constant
  double S = 0.0;   // terminal conditioning threshold
  int k0 = 0;       // terminal level
  double kappa = 1.0;
  double u1 = 1.0, u2 = 1.0, u3 = 1.0;
};

/// Parameter formulas: k0 = ceil(log2(u1^2/(delta u2) * C0 p^{d/2+3} d^{9/2}
/// log p)), L = u1 C0 p sqrt(d log p), S = sqrt(u2)/(2 d^{3/2} p^{d/4}),
/// kappa = max(16 (u1/u2) C0 d^{7/2} log d p^{d/2+1} sqrt(log p), 1).
/// Computed in log space; throws when the thresholds would underflow doubles.
MSSParams mss_params(int d, int p_max, double u1, double u2, double u3,
                     double delta, double C0 = 1.0);

struct BlockGeometry {
  bool intersects_sphere = false;
  Vec nearest_corner;   // per-coordinate smallest |t|, ties to the left end
  Vec farthest_corner;
  std::optional<SpherePoint> projected;  // nearest corner pushed to the sphere
  double diameter = 0.0;                 // sqrt(d) 2^{-k}
};

BlockGeometry block_geometry(const GridBlock& b);

enum class MSSOutcome { point, failed };

struct MSSResult {
  MSSOutcome outcome = MSSOutcome::failed;
  SpherePoint point{Vec::Zero(1)};
  long blocks_visited = 0;
  long blocks_pruned = 0;
  long terminal_checks = 0;
  CertReport certification;
  std::string termination;
};

struct MSSConfig {
  CertifyConfig certify;
  std::optional<long> max_blocks;  // safety valve for pathological parameters
};

/// Depth-first dyadic subdivision of [-1,1]^d with Lipschitz pruning
/// ||F(x_hat)|| > D L and the terminal conditioning test
/// s_min(DF(x_hat) U, kappa) >= S at level k0. Requires n = d-1.
MSSResult mss_run(const PolynomialSystem& sys, const MSSParams& params,
                  const MSSConfig& cfg = {});

}  // namespace sphsolve
