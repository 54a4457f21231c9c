// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria are quantitative desk-scale checks of the solver stack;
// runtimes are bounded per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sphsolve/driver.hpp"
#include "sphsolve/hessdesc.hpp"
#include "sphsolve/mss.hpp"
#include "sphsolve/newton.hpp"
#include "sphsolve/serialize.hpp"
#include "sphsolve/spectral.hpp"
#include "sphsolve/verify.hpp"

using namespace sphsolve;

namespace {

Vec random_unit(GaussianRng& rng, int d) {
  Vec x(d);
  for (int j = 0; j < d; ++j) x[j] = rng.normal();
  return x / x.norm();
}

Mat random_matrix(GaussianRng& rng, int m, int n) {
  Mat A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
  return A;
}

// 1. Euler identity and homogeneity on 100 random (system, point) pairs.
bool algebraic_identities(std::string& detail) {
  GaussianRng rng(101);
  int pass = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + trial % 9;             // d <= 10
    int p = 2 + trial % 5;             // p <= 6
    PolynomialSystem sys = sample_system(d, {p, p}, 10000 + trial);
    Vec x = random_unit(rng, d);
    Vec f = sys.evaluate(x);
    Vec euler = sys.jacobian(x) * x;
    Vec f2 = sys.evaluate(2.0 * x);
    bool ok = true;
    for (int i = 0; i < 2; ++i) {
      double scale = std::max(std::abs(f[i]), 1e-12);
      if (std::abs(euler[i] - p * f[i]) > 1e-9 * std::max(scale, 1.0)) ok = false;
      if (std::abs(f2[i] - std::pow(2.0, p) * f[i]) >
          1e-9 * std::max(std::abs(f2[i]), 1.0))
        ok = false;
    }
    pass += ok;
  }
  detail = std::to_string(pass) + "/100 pairs";
  return pass == 100;
}

// 2. Energy gradient and Hessian vs central finite differences.
bool derivative_consistency(std::string& detail) {
  GaussianRng rng(202);
  const double h = 1e-5;
  int pass = 0;
  for (int trial = 0; trial < 50; ++trial) {
    int d = 3 + trial % 4;
    int p = 2 + trial % 3;
    PolynomialSystem sys = sample_system(d, {p, p}, 20000 + trial);
    Vec x = random_unit(rng, d);
    Vec g = sys.energy_gradient(x);
    Mat H = sys.energy_hessian(x);
    bool ok = true;
    for (int j = 0; j < d && ok; ++j) {
      Vec xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      double fd = (sys.energy(xp) - sys.energy(xm)) / (2 * h);
      if (std::abs(g[j] - fd) > 1e-5 * std::max(1.0, std::abs(fd))) ok = false;
      Vec fdg = (sys.energy_gradient(xp) - sys.energy_gradient(xm)) / (2 * h);
      for (int k = 0; k < d; ++k)
        if (std::abs(H(j, k) - fdg[k]) > 1e-4 * std::max(1.0, std::abs(fdg[k])))
          ok = false;
    }
    pass += ok;
  }
  detail = std::to_string(pass) + "/50 cases";
  return pass == 50;
}

// 3. Covariance law at d=3, p=4, 1e5 samples per overlap.
bool covariance_law(std::string& detail) {
  auto rep = mc_covariance(3, 4, {-1.0, 0.0, 0.5, 1.0}, 100000, 303);
  bool ok = true;
  char buf[160];
  std::string parts;
  for (const auto& e : rep.entries) {
    double dev = std::abs(e.empirical - e.target);
    bool within = dev <= 3.0 * e.std_error;
    ok = ok && within;
    std::snprintf(buf, sizeof buf, " t=%g dev=%.2gSE", e.overlap,
                  e.std_error > 0 ? dev / e.std_error : 0.0);
    parts += buf;
  }
  detail = "targets <x1,x2>^4 at overlaps {-1,0,0.5,1}:" + parts;
  return ok;
}

// 4. Mean circle-root count vs the closed form 2 sqrt(p).
bool root_count_statistics(std::string& detail) {
  bool ok = true;
  char buf[120];
  detail.clear();
  for (int p : {2, 3, 5}) {
    double sum = 0.0;
    for (int t = 0; t < 2000; ++t) {
      PolynomialSystem sys = sample_system(2, {p}, 40000 + 17 * p + t);
      sum += static_cast<double>(circle_roots(sys, 20000).roots.size());
    }
    double mean = sum / 2000.0;
    double expect = kac_rice_mean(2, {p});
    bool within = std::abs(mean - expect) <= 0.05 * expect;
    ok = ok && within;
    std::snprintf(buf, sizeof buf, " p=%d mean=%.3f expect=%.3f", p, mean,
                  expect);
    detail += buf;
  }
  return ok;
}

// 5. Quadratic Newton convergence from perturbed oracle roots.
bool newton_quadratic(std::string& detail) {
  int roots_used = 0;
  int ratios_total = 0, ratios_in_band = 0;
  int finals_ok = 0;
  int seed = 0;
  while (roots_used < 50 && seed < 200) {
    PolynomialSystem sys = sample_system(2, {3}, 50000 + seed);
    ++seed;
    OracleRootSet roots = circle_roots(sys, 20000);
    for (const auto& root : roots.roots) {
      if (roots_used >= 50) break;
      Vec t(2);
      t << -root.coords[1], root.coords[0];
      Vec x0 = (root.coords + 1e-3 * t).normalized();
      NewtonTrajectory traj = newton_iterate(sys, SpherePoint(x0), 12);
      ++roots_used;
      if (traj.residuals.back() <= 1e-12) ++finals_ok;
      // three-point order estimate, insensitive to the contraction constant
      for (std::size_t i = 0; i + 2 < traj.residuals.size(); ++i) {
        double a = traj.residuals[i], b = traj.residuals[i + 1],
               c = traj.residuals[i + 2];
        if (a > 1e-1 || c < 1e-15 || b <= 0.0) continue;
        double order = std::log(c / b) / std::log(b / a);
        ++ratios_total;
        if (order >= 1.7 && order <= 2.3) ++ratios_in_band;
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d roots, %d/%d exponent ratios in [1.7,2.3], %d finals <= 1e-12",
                roots_used, ratios_in_band, ratios_total, finals_ok);
  detail = buf;
  return roots_used == 50 && finals_ok == 50 && ratios_total > 0 &&
         ratios_in_band >= static_cast<int>(0.9 * ratios_total);
}

// 6. Singular-value estimators vs dense oracles on 100 random matrices.
bool spectral_estimators(std::string& detail) {
  GaussianRng rng(606);
  int pass_max = 0, pass_min = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int m = 2 + trial % 49;             // up to 50 rows
    int n = m + trial % (61 - m);       // up to 60 cols, n >= m
    Mat A = random_matrix(rng, m, n);
    DenseSvd o = dense_svd(A);
    double lmax = o.sigma[0] * o.sigma[0];
    double shat = s_max_sq(A);
    if (shat >= lmax / std::sqrt(2.0) && shat <= lmax * (1.0 + 1e-8))
      ++pass_max;
    // kappa from the grid-search formula at (d, p) = (m, 2), floored at 2^10
    double ld = std::log(std::max(m, 2));
    double kappa = std::max(
        16.0 * std::pow(static_cast<double>(m), 3.5) * ld *
            std::pow(2.0, m / 2.0 + 1.0) * std::sqrt(std::log(2.0)),
        1024.0);
    kappa = std::min(kappa, 1e18);
    double smin = s_min(A, kappa);
    double sig_min = o.sigma[o.sigma.size() - 1];
    double kprime = std::ldexp(1.0, static_cast<int>(std::ceil(std::log2(kappa))));
    double band = std::sqrt(2.0 * shat *
                            (1.0 - std::exp(-std::log(static_cast<double>(m)) /
                                            (2.0 * kprime))));
    if (smin >= sig_min - 1e-8 * o.sigma[0] &&
        smin <= sig_min + band + 1e-7 * o.sigma[0])
      ++pass_min;
  }
  detail = "s_max " + std::to_string(pass_max) + "/100, s_min " +
           std::to_string(pass_min) + "/100";
  return pass_max == 100 && pass_min == 100;
}

// 7. Descent-direction guarantee: Rayleigh <= (1/2) lambda_min(restricted).
bool direction_guarantee(std::string& detail) {
  GaussianRng rng(707);
  int done = 0, pass = 0, attempts = 0;
  while (done < 100 && attempts < 600) {
    ++attempts;
    int d = 3 + attempts % 6;
    int p = 2 + attempts % 3;
    PolynomialSystem sys = sample_system(d, {p, p}, 70000 + attempts);
    Vec x = random_unit(rng, d);
    SpherePoint sp(x);
    double lmin = dense_symmetric_eigen(restricted_hessian(sys, sp)).values[0];
    if (lmin > -1e-6) continue;  // need genuinely negative tangent curvature
    ++done;
    DirectionResult r = find_descent_direction(sys, sp);
    if (r.ok && r.rayleigh <= 0.5 * lmin && std::abs(r.v.dot(x)) <= 1e-10 &&
        std::abs(r.v.norm() - 1.0) <= 1e-12)
      ++pass;
  }
  detail = std::to_string(pass) + "/" + std::to_string(done) + " cases";
  return done == 100 && pass == 100;
}

// 8. Descent end-to-end at d=40, p=3, 20 seeds.
bool descent_end_to_end(std::string& detail) {
  const int d = 40, p = 3;
  const int n = underdetermined_n(d);
  std::vector<int> degs(n, p);
  int solved = 0, certified = 0;
  bool traces_ok = true;
  for (int seed = 0; seed < 20; ++seed) {
    PolynomialSystem sys = sample_system(d, degs, seed);
    HDResult r = hd_run(sys);
    if (r.outcome != HDOutcome::point) continue;
    if (sys.energy(r.point.coords) <= 1e-10) ++solved;
    if (r.certification.certified) ++certified;
    for (std::size_t i = 0; i < r.pre_projection_trace.size(); ++i)
      if (r.energy_trace[i + 1] > r.pre_projection_trace[i] * (1.0 + 1e-12))
        traces_ok = false;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d/20 reach H<=1e-10, %d/20 certify, projection inequality %s",
                solved, certified, traces_ok ? "held on all steps" : "VIOLATED");
  detail = buf;
  return solved >= 18 && certified >= 18 && traces_ok;
}

// 9. Grid search end-to-end at d in {2,3} vs the scan oracles.
bool grid_search_end_to_end(std::string& detail) {
  detail.clear();
  char buf[120];
  bool all_ok = true;
  // d = 2, degree 3
  {
    MSSParams prm = mss_params(2, 3, 1.1, 0.5, 1.0, 0.1, 2.0);
    int agree = 0, cert_bad = 0;
    for (int seed = 0; seed < 50; ++seed) {
      PolynomialSystem sys = sample_system(2, {3}, 90000 + seed);
      MSSResult r = mss_run(sys, prm);
      bool oracle_has = !circle_roots(sys, 20000).roots.empty();
      if ((r.outcome == MSSOutcome::point) == oracle_has) ++agree;
      if (r.outcome == MSSOutcome::point && !r.certification.certified)
        ++cert_bad;
    }
    std::snprintf(buf, sizeof buf, " d=2: %d/50 agree, %d uncertified;", agree,
                  cert_bad);
    detail += buf;
    all_ok = all_ok && agree >= 48 && cert_bad == 0;
  }
  // d = 3, degrees (2, 3)
  {
    MSSParams prm = mss_params(3, 3, 1.1, 0.5, 1.0, 0.1, 2.0);
    int agree = 0, cert_bad = 0;
    for (int seed = 0; seed < 50; ++seed) {
      PolynomialSystem sys = sample_system(3, {2, 3}, 91000 + seed);
      MSSResult r = mss_run(sys, prm);
      bool oracle_has = !sphere_scan_roots(sys, 0.02).roots.empty();
      if ((r.outcome == MSSOutcome::point) == oracle_has) ++agree;
      if (r.outcome == MSSOutcome::point && !r.certification.certified)
        ++cert_bad;
    }
    std::snprintf(buf, sizeof buf, " d=3: %d/50 agree, %d uncertified;", agree,
                  cert_bad);
    detail += buf;
    all_ok = all_ok && agree >= 48 && cert_bad == 0;
  }
  // all-positive even-degree systems must always fail
  {
    GaussianRng rng(909);
    int false_count = 0;
    MSSParams prm = mss_params(3, 4, 1.1, 0.5, 1.0, 0.1, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
      std::map<MultiIndex, double> t1, t2;
      for (auto& mi : enumerate_monomials(3, 2))
        if (mi[0] % 2 == 0 && mi[1] % 2 == 0 && mi[2] % 2 == 0)
          t1[mi] = std::abs(rng.normal()) + 0.1;
      for (auto& mi : enumerate_monomials(3, 4))
        if (mi[0] % 2 == 0 && mi[1] % 2 == 0 && mi[2] % 2 == 0)
          t2[mi] = std::abs(rng.normal()) + 0.1;
      PolynomialSystem sys(3,
                           {HomogeneousPoly(3, 2, t1), HomogeneousPoly(3, 4, t2)});
      MSSResult r = mss_run(sys, prm);
      if (r.outcome == MSSOutcome::failed) ++false_count;
    }
    std::snprintf(buf, sizeof buf, " positive-even: %d/5 FALSE", false_count);
    detail += buf;
    all_ok = all_ok && false_count == 5;
  }
  return all_ok;
}

// 10. Determinism of repeated seeded solves.
bool determinism(std::string& detail) {
  bool ok = true;
  {
    SolverConfig cfg;
    cfg.seed = 12;
    cfg.mode_override = Algorithm::mss;
    auto a = dispatch_generate(3, 3, cfg).to_json();
    auto b = dispatch_generate(3, 3, cfg).to_json();
    a.erase("timing_seconds");
    b.erase("timing_seconds");
    ok = ok && a.dump() == b.dump();
  }
  {
    SolverConfig cfg;
    cfg.seed = 13;
    cfg.mode_override = Algorithm::hd;
    auto a = dispatch_generate(10, 3, cfg).to_json();
    auto b = dispatch_generate(10, 3, cfg).to_json();
    a.erase("timing_seconds");
    b.erase("timing_seconds");
    ok = ok && a.dump() == b.dump();
  }
  detail = ok ? "identical JSON modulo timing (mss d=3, hd d=10)"
              : "reports differ";
  return ok;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool(std::string&)> fn;
  };
  std::vector<Criterion> criteria = {
      {"1 algebraic identities (Euler, homogeneity)", algebraic_identities},
      {"2 derivative consistency vs finite differences", derivative_consistency},
      {"3 covariance law, d=3 p=4, 1e5 samples", covariance_law},
      {"4 mean circle-root count vs closed form", root_count_statistics},
      {"5 Newton quadratic convergence from perturbed roots", newton_quadratic},
      {"6 singular-value estimators vs dense oracles", spectral_estimators},
      {"7 descent-direction curvature guarantee", direction_guarantee},
      {"8 curvature descent end-to-end, d=40", descent_end_to_end},
      {"9 grid search end-to-end vs scan oracles", grid_search_end_to_end},
      {"10 determinism of seeded solves", determinism},
  };

  int failures = 0;
  for (auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%s] criterion %s — %s (%.1fs)\n", ok ? "PASS" : "FAIL",
                c.name, detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures == 0)
    std::printf("ACCEPTANCE: all %zu criteria passed\n", criteria.size());
  else
    std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
