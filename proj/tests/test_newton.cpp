#include <doctest.h>

#include <cmath>

#include <Eigen/SVD>

#include "sphsolve/newton.hpp"
#include "sphsolve/verify.hpp"

using namespace sphsolve;

namespace {

PolynomialSystem xy_system() {
  HomogeneousPoly p(2, 2, {{{1, 1}, 1.0}});
  return PolynomialSystem(2, {p});
}

SpherePoint angle_point(double theta) {
  Vec x(2);
  x << std::cos(theta), std::sin(theta);
  return SpherePoint(x);
}

}  // namespace

TEST_CASE("exact root is a fixed point") {
  PolynomialSystem sys = xy_system();
  SpherePoint x = angle_point(0.0);  // (1, 0) is a root
  NewtonStepResult r = newton_step(sys, x);
  CHECK_FALSE(r.degenerate);
  CHECK(r.step.norm() < 1e-14);
  CHECK((r.next.coords - x.coords).norm() < 1e-14);
}

TEST_CASE("closed-form n=1 step") {
  PolynomialSystem sys = xy_system();
  NewtonStepResult r = newton_step(sys, angle_point(M_PI / 6.0));
  CHECK_FALSE(r.degenerate);
  CHECK(r.next.coords[0] == doctest::Approx(0.98198).epsilon(1e-4));
  CHECK(r.next.coords[1] == doctest::Approx(-0.18898).epsilon(1e-4));
}

TEST_CASE("symmetry-forced singularity is degenerate") {
  PolynomialSystem sys = xy_system();
  SpherePoint x = angle_point(M_PI / 4.0);
  NewtonStepResult r = newton_step(sys, x);
  CHECK(r.degenerate);
  CHECK((r.next.coords - x.coords).norm() == 0.0);
}

TEST_CASE("iteration converges from pi/6 to the axis root") {
  PolynomialSystem sys = xy_system();
  NewtonTrajectory traj = newton_iterate(sys, angle_point(M_PI / 6.0), 10);
  CHECK(traj.points.size() <= 7);
  Vec root(2);
  root << 1.0, 0.0;
  CHECK((traj.points.back().coords - root).norm() < 1e-12);
}

TEST_CASE("non-unit input rejected") {
  PolynomialSystem sys = xy_system();
  Vec bad(2);
  bad << 2.0, 0.0;
  CHECK_THROWS_AS(newton_step(sys, SpherePoint(bad)), std::invalid_argument);
}

TEST_CASE("tangency and minimum-norm invariants") {
  GaussianRng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    int d = 4 + trial % 4;
    int n = d - 2;  // underdetermined: DF|T has a kernel
    std::vector<int> degs(n, 3);
    PolynomialSystem sys = sample_system(d, degs, 500 + trial);
    Vec x(d);
    for (int j = 0; j < d; ++j) x[j] = rng.normal();
    x.normalize();
    NewtonStepResult r = newton_step(sys, SpherePoint(x));
    if (r.degenerate) continue;
    CHECK(std::abs(r.step.dot(x)) < 1e-10);
    // minimum-norm: the step is orthogonal to the kernel of the restricted
    // Jacobian M = DF(x) U
    Mat U = tangent_basis(SpherePoint(x)).columns;
    Mat M = sys.jacobian(x) * U;
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
    double scale = std::max(r.step.norm(), 1e-30);
    for (int k = n; k < d - 1; ++k) {
      Vec kernel_dir = U * svd.matrixV().col(k);
      CHECK(std::abs(r.step.dot(kernel_dir)) <= 1e-8 * scale + 1e-12);
    }
  }
}

TEST_CASE("quadratic contraction from a perturbed oracle root") {
  PolynomialSystem sys = sample_system(2, {3}, 2024);
  OracleRootSet roots = circle_roots(sys, 20000);
  REQUIRE(!roots.roots.empty());
  Vec root = roots.roots[0].coords;
  Vec tangent(2);
  tangent << -root[1], root[0];
  Vec x0 = (root + 1e-3 * tangent).normalized();
  NewtonTrajectory traj = newton_iterate(sys, SpherePoint(x0), 10);
  CHECK(traj.residuals.back() < 1e-12);
  int in_band = 0, total = 0;
  // three-point order estimate, insensitive to the contraction constant
  for (std::size_t i = 0; i + 2 < traj.residuals.size(); ++i) {
    double a = traj.residuals[i], b = traj.residuals[i + 1],
           c = traj.residuals[i + 2];
    if (a > 1e-1 || c < 1e-15 || b <= 0.0) continue;
    double order = std::log(c / b) / std::log(b / a);
    ++total;
    if (order >= 1.7 && order <= 2.3) ++in_band;
  }
  CHECK(total >= 1);
  CHECK(in_band == total);
}

TEST_CASE("certification on an exact root") {
  PolynomialSystem sys = xy_system();
  SpherePoint root = angle_point(0.0);
  CertifyConfig cfg;
  cfg.mode = CertMode::empirical;
  CHECK(certify(sys, root, cfg).certified);
  cfg.mode = CertMode::analytic;
  cfg.lipschitz_L = 2.0;
  CertReport rep = certify(sys, root, cfg);
  CHECK(rep.certified);
  CHECK(rep.B_bound >= 3.0);
}

TEST_CASE("rootless system is never certified") {
  HomogeneousPoly p(2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  PolynomialSystem sys(2, {p});  // x^2 + y^2: no circle root, H = 1/2
  for (double theta : {0.1, 0.9, 2.3}) {
    CertifyConfig cfg;
    cfg.mode = CertMode::empirical;
    CertReport rep = certify(sys, angle_point(theta), cfg);
    CHECK_FALSE(rep.certified);
    CHECK(rep.residual_trace.front() == doctest::Approx(1.0));
    cfg.mode = CertMode::analytic;
    CHECK_FALSE(certify(sys, angle_point(theta), cfg).certified);
  }
}

TEST_CASE("perturbed seeded root certifies empirically") {
  PolynomialSystem sys = sample_system(3, {3, 3}, 314);
  OracleRootSet roots = sphere_scan_roots(sys, 0.02);
  REQUIRE(!roots.roots.empty());
  Vec root = roots.roots[0].coords;
  Mat U = tangent_basis(SpherePoint(root)).columns;
  Vec x = (root + 1e-4 * U.col(0)).normalized();
  CertReport rep = certify(sys, SpherePoint(x));
  CHECK(rep.certified);
}
