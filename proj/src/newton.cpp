#include "sphsolve/newton.hpp"

#include <cmath>

#include "sphsolve/linalg.hpp"
#include "sphsolve/spectral.hpp"

namespace sphsolve {

NewtonStepResult newton_step(const PolynomialSystem& sys, const SpherePoint& x,
                             const NewtonConfig& cfg) {
  const int d = sys.dim();
  if (std::abs(x.coords.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("newton_step: point is not on the sphere");
  Vec f = sys.evaluate(x.coords);
  Mat U = tangent_basis(x).columns;
  Mat M = sys.jacobian(x.coords) * U;  // n x (d-1)

  SvdResult svd = jacobi_svd(M);
  const int r = static_cast<int>(svd.sigma.size());
  double sigma_min = r > 0 ? svd.sigma[r - 1] : 0.0;
  // degeneracy is decided on the full row spectrum: with fewer equations than
  // tangent directions the relevant quantity is the n-th singular value
  int n = sys.num_polys();
  double sigma_n = (n <= r && n >= 1) ? svd.sigma[n - 1] : sigma_min;

  NewtonStepResult res{x, Vec::Zero(d), sigma_n, false};
  if (sigma_n < cfg.degen_floor) {
    res.degenerate = true;
    return res;
  }
  Vec t = pinv_solve(svd, -f, cfg.rank_tol);  // tangent coordinates
  Vec v = U * t;
  Vec y = x.coords + v;
  res.next = project_to_sphere(y);
  res.step = v;
  return res;
}

NewtonTrajectory newton_iterate(const PolynomialSystem& sys,
                                const SpherePoint& x0, int max_iters,
                                const NewtonConfig& cfg) {
  NewtonTrajectory traj;
  SpherePoint x = x0;
  traj.points.push_back(x);
  traj.residuals.push_back(sys.evaluate(x.coords).norm());
  for (int i = 0; i < max_iters; ++i) {
    if (traj.residuals.back() <= cfg.residual_floor) {
      traj.hit_floor = true;
      break;
    }
    NewtonStepResult step = newton_step(sys, x, cfg);
    if (step.degenerate) {
      traj.hit_degenerate = true;
      break;
    }
    x = step.next;
    traj.points.push_back(x);
    traj.residuals.push_back(sys.evaluate(x.coords).norm());
  }
  return traj;
}

namespace {

// Sampled estimate of sup ||DF||_op over the sphere, used as the Lipschitz
// surrogate when the caller does not supply one. A lower bound on the true
// sup, inflated by 1.5x.
double sampled_lipschitz(const PolynomialSystem& sys, int samples,
                         std::uint64_t seed) {
  GaussianRng rng(seed);
  const int d = sys.dim();
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vec x(d);
    for (int j = 0; j < d; ++j) x[j] = rng.normal();
    x.normalize();
    best = std::max(best, sigma_max_est(sys.jacobian(x)));
  }
  return 1.5 * best;
}

}  // namespace

CertReport certify(const PolynomialSystem& sys, const SpherePoint& x,
                   const CertifyConfig& cfg) {
  CertReport rep;
  rep.mode = cfg.mode;
  const double fnorm0 = sys.evaluate(x.coords).norm();

  Mat U = tangent_basis(x).columns;
  SvdResult svd = jacobi_svd(sys.jacobian(x.coords) * U);
  int n = sys.num_polys();
  int r = static_cast<int>(svd.sigma.size());
  double sigma = (n <= r && n >= 1) ? svd.sigma[n - 1] : 0.0;
  if (sigma < cfg.newton.degen_floor) {
    rep.reason = "degenerate Jacobian at the point";
    rep.residual_trace.push_back(fnorm0);
    return rep;
  }

  if (cfg.mode == CertMode::analytic) {
    double L = cfg.lipschitz_L
                   ? *cfg.lipschitz_L
                   : sampled_lipschitz(sys, cfg.lipschitz_samples,
                                       cfg.lipschitz_seed);
    rep.L_used = L;
    double eta = 2.0 * fnorm0 / sigma;  // distance surrogate
    rep.dist_surrogate = eta;
    double M = sys.max_degree() * fnorm0;
    double T = sigma - 5.0 * L * eta;
    if (T <= 0.0) {
      rep.reason = "conditioning margin T non-positive (surrogate)";
      return rep;
    }
    rep.B_bound = 3.0 + (8.0 * L + 4.0 * M) / T;
    if (eta <= 1.0 / (4.0 * rep.B_bound)) {
      rep.certified = true;
      rep.reason = "heuristic-analytic bound satisfied";
    } else {
      rep.reason = "distance surrogate exceeds 1/(4B)";
    }
    return rep;
  }

  // empirical mode: K Newton steps, contraction against the last iterate
  NewtonTrajectory traj = newton_iterate(sys, x, cfg.K, cfg.newton);
  rep.residual_trace = traj.residuals;
  for (std::size_t i = 0; i + 1 < traj.residuals.size(); ++i) {
    double a = traj.residuals[i], b = traj.residuals[i + 1];
    if (a > 1e-300 && b > 1e-300 && a < 0.1)
      rep.contraction_exponents.push_back(std::log(b) / std::log(a));
  }
  if (traj.hit_degenerate && traj.residuals.back() > cfg.newton.residual_floor) {
    rep.reason = "Newton iteration hit a degenerate Jacobian";
    return rep;
  }
  const Vec& limit = traj.points.back().coords;
  double base = (traj.points.front().coords - limit).norm();
  if (base <= 16.0 * cfg.newton.residual_floor) {
    // already at (numerically) the limit point: an exact root
    rep.certified = true;
    rep.reason = "point is numerically an exact solution";
    return rep;
  }
  bool ok = true;
  const double precision_floor = 1e-13;
  for (std::size_t i = 1; i + 1 < traj.points.size(); ++i) {
    double dist = (traj.points[i].coords - limit).norm();
    if (dist < precision_floor) break;
    double bound = std::ldexp(base, 1 - (1 << std::min<std::size_t>(i, 30)));
    if (dist > 2.0 * bound) {  // 2x slack for the finite-limit approximation
      ok = false;
      break;
    }
  }
  if (ok && traj.residuals.back() > 1e3 * cfg.newton.residual_floor &&
      traj.residuals.back() >= 0.5 * fnorm0) {
    ok = false;  // no actual progress toward a solution
  }
  rep.certified = ok;
  rep.reason = ok ? "doubly exponential contraction observed"
                  : "contraction envelope violated";
  return rep;
}

}  // namespace sphsolve
