#include "sphsolve/hessdesc.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace sphsolve {

double HDConfig::energy_floor(int p_max, int d) const {
  double scale_law = std::pow(static_cast<double>(p_max), -c0 * d);
  return std::max(scale_law, 1e-24);
}

long HDConfig::budget(int d, int p_max) const {
  if (max_iters) return *max_iters;
  double lp = std::log(static_cast<double>(p_max));
  double b = C0_prime * std::pow(static_cast<double>(d), 1.5) *
             std::pow(static_cast<double>(p_max), 4) * lp * lp;
  return static_cast<long>(std::ceil(b));
}

int underdetermined_n(int d, double A) {
  double n = std::floor(d - A * std::sqrt(d * std::log(static_cast<double>(d))));
  int ni = static_cast<int>(n);
  return std::max(1, std::min(ni, d - 1));
}

namespace {

struct StepEval {
  SpherePoint next;
  int sign;
  double H_y;     // energy at y = x - s delta v, before projection
  double H_next;  // energy after projection, computed by rescaling F(y)
};

StepEval apply_step(const PolynomialSystem& sys, const SpherePoint& x,
                    double delta, const Vec& v) {
  Vec xp = x.coords + delta * v;
  Vec xm = x.coords - delta * v;
  Vec fp = sys.evaluate(xp);
  Vec fm = sys.evaluate(xm);
  double Hp = 0.5 * fp.squaredNorm();
  double Hm = 0.5 * fm.squaredNorm();
  int s = (Hp - Hm >= 0.0) ? 1 : -1;  // sign(0) = +1
  const Vec& y = (s == 1) ? xm : xp;
  const Vec& fy = (s == 1) ? fm : fp;
  double Hy = (s == 1) ? Hm : Hp;
  double ynorm = y.norm();
  SpherePoint next(y / ynorm);
  // projection rescales each component by ||y||^{-p_i}; with ||y|| >= 1 this
  // can only shrink the residual, so the energy inequality holds exactly on
  // the computed values
  double Hn = 0.0;
  auto degs = sys.degrees();
  for (int i = 0; i < sys.num_polys(); ++i) {
    double fi = fy[i] / std::pow(ynorm, degs[i]);
    Hn += fi * fi;
  }
  Hn *= 0.5;
  return {next, s, Hy, Hn};
}

double step_delta(const HDConfig& cfg, int d, int n, int p, double H) {
  double lp = std::log(static_cast<double>(p));
  double inner = (1.0 / (30.0 * cfg.C1)) *
                 (1.0 / (std::pow(static_cast<double>(p), 4) * lp)) *
                 std::sqrt((d - n) * H) / d;
  return std::sqrt(std::min(inner, 1.0 / p));
}

}  // namespace

HDStep hd_step(const PolynomialSystem& sys, const SpherePoint& x,
               const HDConfig& cfg) {
  const int d = sys.dim();
  const int n = sys.num_polys();
  const int p = sys.max_degree();
  double H = sys.energy(x.coords);
  double delta = step_delta(cfg, d, n, p, H);

  HDStep out;
  out.delta = delta;
  DirectionResult dir = find_descent_direction(sys, x, cfg.spectral);
  if (!dir.ok) {
    out.direction_failed = true;
    out.next = x;
    return out;
  }
  out.direction = dir.v;
  StepEval ev = apply_step(sys, x, delta, dir.v);
  out.next = ev.next;
  out.sign = ev.sign;
  out.energy_before_projection = ev.H_y;
  out.energy_after = ev.H_next;
  return out;
}

HDResult hd_run(const PolynomialSystem& sys, const HDConfig& cfg) {
  const int d = sys.dim();
  const int n = sys.num_polys();
  const int p = sys.max_degree();
  if (n > d - 1)
    throw std::invalid_argument("hd_run: need an underdetermined system (n <= d-1)");
  const double floor = cfg.energy_floor(p, d);
  const long budget = cfg.budget(d, p);

  HDResult res;
  Vec x0 = Vec::Zero(d);
  x0[0] = 1.0;
  SpherePoint x(x0);
  double H = sys.energy(x.coords);

  for (long i = 0;; ++i) {
    res.energy_trace.push_back(H);
    if (H <= floor) {
      res.outcome = HDOutcome::point;
      res.point = x;
      res.iterations = i;
      res.termination = "energy floor reached";
      res.certification = certify(sys, x, cfg.certify);
      return res;
    }
    if (i >= budget) {
      res.iterations = i;
      res.termination = "iteration budget exhausted";
      return res;
    }
    double delta = step_delta(cfg, d, n, p, H);
    DirectionResult dir = find_descent_direction(sys, x, cfg.spectral);
    Vec v;
    if (dir.ok) {
      v = dir.v;
    } else {
      // degenerate power iteration: fall back to the exact dense minimum
      // eigenvector of the restricted Hessian
      Mat U = tangent_basis(x).columns;
      Mat R = restricted_hessian(sys, x);
      Eigen::SelfAdjointEigenSolver<Mat> es(R);
      if (es.eigenvalues()[0] >= 0.0) {
        res.iterations = i;
        res.termination = "restricted Hessian has no negative curvature";
        return res;
      }
      v = U * es.eigenvectors().col(0);
      v -= v.dot(x.coords) * x.coords;
      v.normalize();
    }
    StepEval ev = apply_step(sys, x, delta, v);
    res.pre_projection_trace.push_back(ev.H_y);
    res.delta_trace.push_back(delta);
    x = ev.next;
    H = ev.H_next;
  }
}

}  // namespace sphsolve
