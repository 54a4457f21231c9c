#include "sphsolve/mss.hpp"

#include <cmath>

#include "sphsolve/spectral.hpp"

namespace sphsolve {

std::vector<GridBlock> GridBlock::children() const {
  const int d = static_cast<int>(corner.size());
  const double h = std::ldexp(1.0, -(k + 1));
  const long count = 1L << d;
  std::vector<GridBlock> out;
  out.reserve(count);
  for (long m = 0; m < count; ++m) {
    GridBlock child;
    child.k = k + 1;
    child.corner = corner;
    // bit (d-1-j) of m drives coordinate j, so increasing m walks the
    // offset tuples in lexicographic order
    for (int j = 0; j < d; ++j)
      if ((m >> (d - 1 - j)) & 1) child.corner[j] += h;
    out.push_back(std::move(child));
  }
  return out;
}

MSSParams mss_params(int d, int p_max, double u1, double u2, double u3,
                     double delta, double C0) {
  if (!(u2 > 0.0 && u2 <= 1.0 && u1 >= 1.0))
    throw std::invalid_argument("mss_params: need 0 < u2 <= 1 <= u1");
  if (!(u3 > 0.0)) throw std::invalid_argument("mss_params: need u3 > 0");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("mss_params: need delta in (0,1]");
  if (!(C0 > 0.0)) throw std::invalid_argument("mss_params: need C0 > 0");

  const double ld = std::log(static_cast<double>(d));
  const double lp = std::log(static_cast<double>(p_max));
  // all parameter formulas in log space: p^{d/2}-type factors overflow
  // doubles long before the run itself becomes infeasible
  double log_arg = 2.0 * std::log(u1) - std::log(delta) - std::log(u2) +
                   std::log(C0) + (d / 2.0 + 3.0) * lp + 4.5 * ld +
                   std::log(lp);
  MSSParams prm;
  prm.u1 = u1;
  prm.u2 = u2;
  prm.u3 = u3;
  double k0 = std::ceil(log_arg / std::log(2.0));
  if (k0 > 1020.0)
    throw std::invalid_argument("mss_params: parameters out of floating range (k0)");
  prm.k0 = std::max(0, static_cast<int>(k0));
  prm.L = u1 * C0 * p_max * std::sqrt(d * lp);

  double log_S = 0.5 * std::log(u2) - std::log(2.0) - 1.5 * ld -
                 (d / 4.0) * lp;
  if (log_S < std::log(1e-300))
    throw std::invalid_argument("mss_params: parameters out of floating range (S)");
  prm.S = std::exp(log_S);

  double log_kappa = std::log(16.0) + std::log(u1) - std::log(u2) +
                     std::log(C0) + 3.5 * ld + std::log(ld > 0 ? ld : 1.0) +
                     (d / 2.0 + 1.0) * lp + 0.5 * std::log(lp);
  prm.kappa = std::max(std::exp(std::min(log_kappa, 700.0)), 1.0);

  // terminal acceptance threshold D*L at level k0 must stay representable
  double log_thresh = 0.5 * ld - prm.k0 * std::log(2.0) + std::log(prm.L);
  if (log_thresh < std::log(1e-300))
    throw std::invalid_argument(
        "mss_params: parameters out of floating range (terminal threshold)");
  return prm;
}

BlockGeometry block_geometry(const GridBlock& b) {
  const int d = static_cast<int>(b.corner.size());
  const double h = b.side();
  BlockGeometry g;
  g.nearest_corner = Vec(d);
  g.farthest_corner = Vec(d);
  for (int j = 0; j < d; ++j) {
    double lo = b.corner[j], hi = b.corner[j] + h;
    // ties go to the left endpoint; an origin-straddling interval (only the
    // root block) has its nearest point at 0, not at an endpoint
    if (lo < 0.0 && hi > 0.0)
      g.nearest_corner[j] = 0.0;
    else
      g.nearest_corner[j] = (std::abs(lo) <= std::abs(hi)) ? lo : hi;
    g.farthest_corner[j] = (std::abs(hi) >= std::abs(lo)) ? hi : lo;
  }
  g.diameter = std::sqrt(static_cast<double>(d)) * h;
  double near = g.nearest_corner.norm();
  double far = g.farthest_corner.norm();
  g.intersects_sphere = (near <= 1.0 && 1.0 <= far);
  if (g.intersects_sphere) {
    if (near > 0.0)
      g.projected = SpherePoint(g.nearest_corner / near);
    else
      g.projected = SpherePoint(g.farthest_corner / far);
  }
  return g;
}

MSSResult mss_run(const PolynomialSystem& sys, const MSSParams& params,
                  const MSSConfig& cfg) {
  const int d = sys.dim();
  if (sys.num_polys() != d - 1)
    throw std::invalid_argument("mss_run: requires n = d-1 equations");

  MSSResult res;
  std::vector<GridBlock> stack;
  GridBlock root;
  root.k = -1;
  root.corner = Vec::Constant(d, -1.0);
  stack.push_back(std::move(root));

  while (!stack.empty()) {
    GridBlock b = std::move(stack.back());
    stack.pop_back();
    ++res.blocks_visited;
    if (cfg.max_blocks && res.blocks_visited > *cfg.max_blocks) {
      res.termination = "block budget exhausted";
      return res;
    }
    BlockGeometry g = block_geometry(b);
    if (!g.intersects_sphere) continue;
    const Vec& xhat = g.projected->coords;
    double fnorm = sys.evaluate(xhat).norm();
    double DL = g.diameter * params.L;
    if (b.k < params.k0) {
      if (fnorm > DL) {
        ++res.blocks_pruned;
        continue;
      }
      auto kids = b.children();
      // push in reverse so the lexicographically first child pops first
      for (auto it = kids.rbegin(); it != kids.rend(); ++it)
        stack.push_back(std::move(*it));
      continue;
    }
    // terminal level
    ++res.terminal_checks;
    if (fnorm <= DL) {
      Mat U = tangent_basis(*g.projected).columns;
      double smin = s_min(sys.jacobian(xhat) * U, params.kappa);
      if (smin >= params.S) {
        res.outcome = MSSOutcome::point;
        res.point = *g.projected;
        res.termination = "terminal block accepted";
        res.certification = certify(sys, res.point, cfg.certify);
        return res;
      }
    }
  }
  res.termination = "worklist exhausted";
  return res;
}

}  // namespace sphsolve
